#include "lecturekit/preprocess/pipeline.hpp"

#include "lecturekit/common/text.hpp"
#include "lecturekit/common/time.hpp"
#include "lecturekit/content/bundle_io.hpp"

#include <cstdio>

namespace lecturekit::preprocess
{

namespace fs = std::filesystem;

namespace
{

template <typename Fn>
auto stage(const char* name, Fn&& fn) -> decltype(fn())
{
    try
    {
        return fn();
    }
    catch (const StageError&)
    {
        throw;
    }
    catch (const Error& e)
    {
        throw StageError(name, e.code(), e.what());
    }
    catch (const std::exception& e)
    {
        throw StageError(name, "Internal", e.what());
    }
}

/// Sentences of `s`, at most `limit`.
std::vector<std::string> sentences(const std::string& s, std::size_t limit)
{
    std::vector<std::string> out;
    std::string cur;
    for (std::size_t i = 0; i < s.size() && out.size() < limit; ++i)
    {
        cur.push_back(s[i]);
        bool stop = (s[i] == '.' || s[i] == '!' || s[i] == '?') && (i + 1 == s.size() || s[i + 1] == ' ');
        if (stop)
        {
            if (auto t = text::trim(cur); !t.empty())
                out.push_back(t);
            cur.clear();
        }
    }
    if (out.size() < limit)
        if (auto t = text::trim(cur); !t.empty())
            out.push_back(t);
    return out;
}

std::string sectionId(std::size_t index)
{
    char buf[16];
    std::snprintf(buf, sizeof buf, "s%03zu", index + 1);
    return buf;
}

} // namespace

content::LectureBundle buildBundle(const fs::path& video, const fs::path& transcript,
                                   const std::optional<fs::path>& examplesDir, const PipelineConfig& config,
                                   const gateway::Gateway& gateway)
{
    if (config.outputDir.empty())
        throw PreconditionFailed("output directory is required");

    auto segments = stage("transcript-ingest", [&] {
        if (!fs::is_regular_file(transcript))
            throw TranscriptUnreadable(transcript.string() + " does not exist");
        return loadTranscript(transcript);
    });

    const fs::path workDir = config.workDir.value_or(config.outputDir / ".frames");
    const bool ownWorkDir = !config.workDir.has_value();
    VideoInfo info;
    auto samples = stage("frame-sampling", [&] {
        info = probeVideo(video);
        return sampleFrames(video, config.intervalSec, workDir);
    });

    auto spans = stage("segmentation",
                       [&] { return segmentSections(samples, gateway, info.durationSec, config.segment); });

    content::LectureBundle bundle;
    bundle.id = config.id;
    bundle.title = config.title.empty() ? video.stem().string() : config.title;
    bundle.durationSec = roundMillis(info.durationSec);
    bundle.createdAt = config.createdAt.empty() ? isoUtcNow() : config.createdAt;
    bundle.videoRef = "video" + video.extension().string();

    for (const char* sub : {"sections", "examples"})
        fs::remove_all(config.outputDir / sub);
    fs::create_directories(config.outputDir);

    std::vector<content::TimeSpan> timeSpans;
    for (const auto& s : spans)
        timeSpans.push_back(content::TimeSpan{roundMillis(s.startSec), roundMillis(s.endSec)});
    timeSpans.back().endSec = bundle.durationSec;
    auto perSection = assignTranscript(segments, timeSpans);

    for (std::size_t i = 0; i < spans.size(); ++i)
    {
        content::Section section;
        section.id = sectionId(i);
        section.startSec = timeSpans[i].startSec;
        section.endSec = timeSpans[i].endSec;
        section.transcript = perSection[i];
        for (auto& seg : section.transcript)
        {
            seg.startSec = roundMillis(seg.startSec);
            seg.endSec = roundMillis(seg.endSec);
        }
        const fs::path& keyFrame = spans[i].keyFrame.imageRef;

        stage("slide-extract", [&] {
            SlideExtract e = extractSlide(keyFrame, gateway);
            section.title = e.title;
            section.mainConcepts = e.mainTopics;
            section.keyPoints = sentences(e.description, 3);
            section.equations = e.equations;
            section.diagrams = e.diagrams;
            section.description = e.description;
            section.contentFingerprint = e.contentFingerprint;

            section.slideImageRef = content::sectionDir(i) + "/slide.png";
            fs::create_directories(config.outputDir / content::sectionDir(i));
            fs::copy_file(keyFrame, config.outputDir / section.slideImageRef, fs::copy_options::overwrite_existing);
        });
        section.quizzes =
            stage("quiz-generation", [&] { return generateQuizBank(section, gateway, config.questionsPerSection); });
        section.highlights =
            stage("highlight-generation", [&] { return generateHighlights(section, keyFrame, gateway); });
        for (auto& h : section.highlights)
            if (h.span)
                h.span = content::TimeSpan{roundMillis(h.span->startSec), roundMillis(h.span->endSec)};
        bundle.sections.push_back(std::move(section));
    }

    if (examplesDir)
    {
        stage("example-registration", [&] {
            fs::create_directories(config.outputDir / "examples");
            for (const auto& src : scanExamples(*examplesDir))
            {
                auto idx = bundle.sectionIndexAt(src.triggerSec);
                if (!idx)
                    throw PreconditionFailed(src.file.filename().string() + " triggers at " +
                                             std::to_string(src.triggerSec) + " s, past the end of the video");
                content::ExampleAsset asset;
                asset.sectionId = bundle.sections[*idx].id;
                asset.triggerSec = roundMillis(src.triggerSec);
                asset.htmlRef = "examples/" + src.file.filename().string();
                asset.title = src.title;
                fs::copy_file(src.file, config.outputDir / asset.htmlRef, fs::copy_options::overwrite_existing);
                bundle.examples.push_back(std::move(asset));
            }
        });
    }

    stage("bundle-write", [&] {
        fs::copy_file(video, config.outputDir / bundle.videoRef, fs::copy_options::overwrite_existing);
        content::saveBundle(bundle, config.outputDir);
        content::validateBundle(bundle, config.outputDir);
        if (ownWorkDir)
            fs::remove_all(workDir);
    });
    return bundle;
}

} // namespace lecturekit::preprocess
