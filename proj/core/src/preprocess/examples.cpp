#include "lecturekit/common/text.hpp"
#include "lecturekit/preprocess/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <regex>
#include <sstream>

namespace lecturekit::preprocess
{

namespace fs = std::filesystem;

namespace
{

std::optional<std::string> attribute(const std::string& tag, const std::string& name)
{
    std::regex re(name + R"(\s*=\s*["']([^"']*)["'])", std::regex::icase);
    std::smatch m;
    if (std::regex_search(tag, m, re))
        return m[1].str();
    return std::nullopt;
}

} // namespace

std::vector<ExampleSource> scanExamples(const fs::path& dir)
{
    if (!fs::is_directory(dir))
        throw PreconditionFailed("examples directory " + dir.string() + " does not exist");

    static const std::regex metaRe(R"(<meta\b[^>]*>)", std::regex::icase);
    static const std::regex titleRe(R"(<title[^>]*>([\s\S]*?)</title>)", std::regex::icase);

    std::vector<ExampleSource> out;
    for (const auto& entry : fs::directory_iterator(dir))
    {
        auto ext = text::toLower(entry.path().extension().string());
        if (!entry.is_regular_file() || (ext != ".html" && ext != ".htm"))
            continue;
        std::ifstream in(entry.path(), std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        const std::string html = ss.str();

        std::optional<double> trigger;
        for (auto it = std::sregex_iterator(html.begin(), html.end(), metaRe); it != std::sregex_iterator(); ++it)
        {
            std::string tag = it->str();
            if (attribute(tag, "name") != std::optional<std::string>("lecture:trigger"))
                continue;
            auto value = attribute(tag, "content");
            try
            {
                std::size_t used = 0;
                double t = value ? std::stod(*value, &used) : -1.0;
                if (!value || used != value->size() || t < 0.0)
                    throw std::invalid_argument("bad");
                trigger = t;
            }
            catch (const std::exception&)
            {
                throw PreconditionFailed(entry.path().filename().string() + ": bad lecture:trigger value");
            }
        }
        if (!trigger)
            continue;

        ExampleSource src;
        src.file = entry.path();
        src.triggerSec = *trigger;
        std::smatch m;
        src.title = std::regex_search(html, m, titleRe) ? text::collapseWhitespace(m[1].str()) : "";
        if (src.title.empty())
            src.title = entry.path().stem().string();
        out.push_back(std::move(src));
    }
    std::sort(out.begin(), out.end(), [](const ExampleSource& a, const ExampleSource& b) {
        return a.triggerSec != b.triggerSec ? a.triggerSec < b.triggerSec : a.file.filename() < b.file.filename();
    });
    return out;
}

} // namespace lecturekit::preprocess
