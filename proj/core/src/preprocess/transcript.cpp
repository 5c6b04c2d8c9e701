#include "lecturekit/common/text.hpp"
#include "lecturekit/preprocess/pipeline.hpp"

#include <fstream>
#include <regex>
#include <sstream>

namespace lecturekit::preprocess
{

namespace
{

/// "HH:MM:SS,mmm", "HH:MM:SS.mmm" or "MM:SS.mmm".
std::optional<double> parseTimestamp(const std::string& s)
{
    static const std::regex re(R"(^(?:(\d+):)?(\d{1,2}):(\d{1,2})[.,](\d{1,3})$)");
    std::smatch m;
    if (!std::regex_match(s, m, re))
        return std::nullopt;
    double hours = m[1].matched ? std::stod(m[1].str()) : 0.0;
    std::string frac = m[4].str();
    while (frac.size() < 3)
        frac.push_back('0');
    return hours * 3600.0 + std::stod(m[2].str()) * 60.0 + std::stod(m[3].str()) + std::stod(frac) / 1000.0;
}

/// Cue timing line "start --> end [settings]".
std::optional<std::pair<double, double>> parseTiming(const std::string& line)
{
    auto arrow = line.find("-->");
    if (arrow == std::string::npos)
        return std::nullopt;
    auto start = parseTimestamp(text::trim(line.substr(0, arrow)));
    std::string rest = text::trim(line.substr(arrow + 3));
    auto space = rest.find_first_of(" \t");
    auto end = parseTimestamp(rest.substr(0, space));
    if (!start || !end)
        throw TranscriptUnreadable("bad cue timing '" + line + "'");
    if (*end < *start)
        throw TranscriptUnreadable("cue ends before it starts: '" + line + "'");
    return std::make_pair(*start, *end);
}

std::vector<std::string> lines(const std::string& content)
{
    std::vector<std::string> out;
    std::istringstream in(content);
    std::string line;
    while (std::getline(in, line))
    {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        out.push_back(line);
    }
    return out;
}

std::string stripTags(const std::string& s)
{
    static const std::regex tag("<[^>]*>");
    return std::regex_replace(s, tag, "");
}

/// Shared cue reader: blocks separated by blank lines; the timing line may be
/// preceded by an identifier line.
std::vector<content::TranscriptSegment> parseCues(const std::vector<std::string>& all, std::size_t from)
{
    std::vector<content::TranscriptSegment> out;
    std::size_t i = from;
    while (i < all.size())
    {
        if (text::trim(all[i]).empty())
        {
            ++i;
            continue;
        }
        std::size_t blockEnd = i;
        while (blockEnd < all.size() && !text::trim(all[blockEnd]).empty())
            ++blockEnd;

        std::optional<std::pair<double, double>> timing;
        std::size_t t = i;
        for (; t < blockEnd && !timing; ++t)
            timing = parseTiming(all[t]);
        if (timing)
        {
            std::vector<std::string> body;
            for (; t < blockEnd; ++t)
                body.push_back(text::trim(stripTags(all[t])));
            std::string joined = text::collapseWhitespace(text::join(body, " "));
            if (!joined.empty())
                out.push_back(content::TranscriptSegment{timing->first, timing->second, joined});
        }
        i = blockEnd;
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const auto& a, const auto& b) { return a.startSec < b.startSec; });
    return out;
}

} // namespace

std::vector<content::TranscriptSegment> parseSrt(const std::string& content)
{
    return parseCues(lines(content), 0);
}

std::vector<content::TranscriptSegment> parseVtt(const std::string& content)
{
    auto all = lines(content);
    if (all.empty() || (all[0].rfind("WEBVTT", 0) != 0 && all[0].rfind("\xEF\xBB\xBFWEBVTT", 0) != 0))
        throw TranscriptUnreadable("missing WEBVTT header");
    // Skip header block, then NOTE/STYLE blocks are ignored because they lack a timing line.
    return parseCues(all, 1);
}

std::vector<content::TranscriptSegment> loadTranscript(const std::filesystem::path& file)
{
    std::ifstream in(file, std::ios::binary);
    if (!in)
        throw TranscriptUnreadable(file.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return file.extension() == ".vtt" ? parseVtt(ss.str()) : parseSrt(ss.str());
}

std::vector<std::vector<content::TranscriptSegment>>
assignTranscript(const std::vector<content::TranscriptSegment>& segments, const std::vector<content::TimeSpan>& spans)
{
    std::vector<std::vector<content::TranscriptSegment>> out(spans.size());
    for (const auto& seg : segments)
    {
        double mid = 0.5 * (seg.startSec + seg.endSec);
        for (std::size_t k = 0; k < spans.size(); ++k)
        {
            bool last = k + 1 == spans.size();
            if (mid >= spans[k].startSec && (mid < spans[k].endSec || (last && mid <= spans[k].endSec)))
            {
                content::TranscriptSegment clipped = seg;
                clipped.startSec = std::max(seg.startSec, spans[k].startSec);
                clipped.endSec = std::min(seg.endSec, spans[k].endSec);
                out[k].push_back(std::move(clipped));
                break;
            }
        }
    }
    return out;
}

} // namespace lecturekit::preprocess
