#include "lecturekit/common/text.hpp"
#include "lecturekit/content/bundle_io.hpp"
#include "lecturekit/preprocess/pipeline.hpp"

#include <algorithm>
#include <set>

namespace lecturekit::preprocess
{

using nlohmann::json;

namespace
{

std::optional<std::vector<std::string>> optionalList(const json& j, const char* key)
{
    if (!j.contains(key))
        return std::nullopt;
    return j.at(key).get<std::vector<std::string>>();
}

} // namespace

SlideExtract extractSlide(const std::filesystem::path& keyFrame, const gateway::Gateway& gateway)
{
    gateway::ProviderRequest request;
    request.templateId = gateway::TemplateId::SlideExtract;
    request.attachments = {keyFrame};
    auto response = gateway.complete(request);
    const json& j = *response.parsed;

    SlideExtract e;
    e.title = j.at("title").get<std::string>();
    e.mainTopics = j.at("mainTopics").get<std::vector<std::string>>();
    e.hasHumanPresence = j.at("hasHumanPresence").get<bool>();
    e.hasAnnotations = j.at("hasAnnotations").get<bool>();
    e.contentFingerprint = j.at("contentFingerprint").get<std::string>();
    e.description = j.at("description").get<std::string>();
    e.equations = optionalList(j, "equations");
    e.diagrams = optionalList(j, "diagrams");
    return e;
}

std::string transcriptText(const std::vector<content::TranscriptSegment>& segments, const std::string& sep)
{
    std::vector<std::string> parts;
    parts.reserve(segments.size());
    for (const auto& s : segments)
        parts.push_back(s.text);
    return text::join(parts, sep);
}

content::DifficultyBank generateQuizBank(const content::Section& section, const gateway::Gateway& gateway,
                                         int questionsPerSection)
{
    if (questionsPerSection < 0)
        throw PreconditionFailed("questionsPerSection must be >= 0");
    if (section.contentFingerprint.empty())
        throw PreconditionFailed("section " + section.id + " has no slide extract");

    content::DifficultyBank bank;
    if (questionsPerSection == 0)
    {
        for (int level = content::kMinDifficulty; level <= content::kMaxDifficulty; ++level)
            bank[level] = {};
        return bank;
    }

    gateway::Bindings base{
        {"questionsPerSection", std::to_string(questionsPerSection)},
        {"title", section.title},
        {"mainConcepts", text::join(section.mainConcepts, ", ")},
        {"keyPoints", text::join(section.keyPoints, ", ")},
        {"transcript", transcriptText(section.transcript)},
        {"questionTypes", "multiple-choice, true-false, fill-blank"},
    };
    if (section.equations)
        base["equations"] = text::join(*section.equations, ", ");
    if (section.diagrams)
        base["diagrams"] = text::join(*section.diagrams, ", ");

    for (int level = content::kMinDifficulty; level <= content::kMaxDifficulty; ++level)
    {
        try
        {
            gateway::ProviderRequest request;
            request.templateId = gateway::TemplateId::QuizGen;
            request.bindings = base;
            request.bindings["difficulty"] = std::to_string(level);
            auto response = gateway.complete(request);

            std::vector<content::QuizItem> items;
            for (const auto& raw : response.parsed->at("questions"))
            {
                if (static_cast<int>(items.size()) == questionsPerSection)
                    break;
                content::QuizItem item = content::validateQuizItem(raw, level);
                item.difficulty = level;
                items.push_back(std::move(item));
            }
            if (items.empty())
                throw PreconditionFailed("provider returned no questions");
            bank[level] = std::move(items);
        }
        catch (const Error& e)
        {
            throw PartialBank(level, std::move(bank), e.what());
        }
    }
    return bank;
}

std::optional<content::Rect> normalizeBox(const std::vector<double>& raw, const content::BoxReference& reference)
{
    if (raw.size() != 4)
        throw PreconditionFailed("box must have 4 coordinates");
    if (reference.width <= 0 || reference.height <= 0)
        throw PreconditionFailed("box reference must be positive");
    auto clamp01 = [](double v) { return std::clamp(v, 0.0, 1.0); };
    double x0 = clamp01(raw[0] / reference.width), y0 = clamp01(raw[1] / reference.height);
    double x1 = clamp01(raw[2] / reference.width), y1 = clamp01(raw[3] / reference.height);
    content::Rect r{std::min(x0, x1), std::min(y0, y1), std::max(x0, x1), std::max(y0, y1)};
    if (!(r.width() > 0.0) || !(r.height() > 0.0))
        return std::nullopt;
    return r;
}

std::optional<content::TimeSpan> matchTranscriptSpan(const std::string& quote,
                                                     const std::vector<content::TranscriptSegment>& segments)
{
    std::string needle = text::normalize(quote);
    if (needle.empty())
        return std::nullopt;
    for (const auto& s : segments)
        if (text::normalize(s.text) == needle)
            return content::TimeSpan{s.startSec, s.endSec};

    auto tokens = text::contentTokens(needle);
    std::set<std::string> a(tokens.begin(), tokens.end());
    if (a.empty())
        return std::nullopt;

    std::optional<content::TimeSpan> span;
    for (const auto& s : segments)
    {
        auto st = text::contentTokens(s.text);
        std::set<std::string> b(st.begin(), st.end());
        if (b.empty())
            continue;
        std::size_t common = 0;
        for (const auto& t : a)
            common += b.count(t);
        double overlap = static_cast<double>(common) / static_cast<double>(std::min(a.size(), b.size()));
        if (overlap + 1e-12 < kFuzzyMatchThreshold)
            continue;
        if (!span)
            span = content::TimeSpan{s.startSec, s.endSec};
        else
        {
            span->startSec = std::min(span->startSec, s.startSec);
            span->endSec = std::max(span->endSec, s.endSec);
        }
    }
    return span;
}

std::vector<content::HighlightEntry> generateHighlights(const content::Section& section,
                                                        const std::filesystem::path& keyFrame,
                                                        const gateway::Gateway& gateway)
{
    gateway::ProviderRequest request;
    request.templateId = gateway::TemplateId::HighlightGen;
    request.bindings = {{"slideTranscript", transcriptText(section.transcript, "\n")}};
    request.attachments = {keyFrame};
    auto response = gateway.complete(request);

    std::vector<content::HighlightEntry> out;
    for (const auto& raw : *response.parsed)
    {
        auto box = normalizeBox(raw.at("box_2d").get<std::vector<double>>(), section.boxReference);
        if (!box)
            continue;
        content::HighlightEntry entry;
        entry.box = *box;
        entry.relevantTranscript = raw.at("relavant_transcript").get<std::string>();
        entry.span = matchTranscriptSpan(entry.relevantTranscript, section.transcript);
        out.push_back(std::move(entry));
    }
    return out;
}

} // namespace lecturekit::preprocess
