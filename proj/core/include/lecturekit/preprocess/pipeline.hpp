#pragma once

#include "lecturekit/common/error.hpp"
#include "lecturekit/content/model.hpp"
#include "lecturekit/gateway/gateway.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace lecturekit::preprocess
{

class VideoUnreadable : public Error
{
  public:
    explicit VideoUnreadable(const std::string& what) : Error("VideoUnreadable", "cannot read video: " + what) {}
};

class ExtractionToolMissing : public Error
{
  public:
    explicit ExtractionToolMissing(const std::string& what) : Error("ExtractionToolMissing", what) {}
};

class TranscriptUnreadable : public Error
{
  public:
    explicit TranscriptUnreadable(const std::string& what)
        : Error("TranscriptUnreadable", "cannot read transcript: " + what)
    {
    }
};

/// A pipeline failure tagged with the stage that raised it.
class StageError : public Error
{
  public:
    StageError(std::string stage, std::string causeCode, const std::string& message)
        : Error("StageError", stage + ": " + message), stage_(std::move(stage)), causeCode_(std::move(causeCode))
    {
    }

    const std::string& stage() const noexcept
    {
        return stage_;
    }
    const std::string& causeCode() const noexcept
    {
        return causeCode_;
    }

  private:
    std::string stage_;
    std::string causeCode_;
};

/// Quiz generation stopped at `failedLevel`; `bank` holds the levels finished before it.
class PartialBank : public Error
{
  public:
    PartialBank(int failedLevel, content::DifficultyBank bank, const std::string& cause)
        : Error("PartialBank", "quiz generation failed at level " + std::to_string(failedLevel) + ": " + cause),
          failedLevel_(failedLevel), bank_(std::move(bank))
    {
    }

    int failedLevel() const noexcept
    {
        return failedLevel_;
    }
    const content::DifficultyBank& bank() const noexcept
    {
        return bank_;
    }

  private:
    int failedLevel_;
    content::DifficultyBank bank_;
};

// ---- frames ----------------------------------------------------------------

struct FrameSample
{
    double timestampSec{0.0};
    std::filesystem::path imageRef;
    std::uint64_t perceptualHash{0};
};

struct VideoInfo
{
    double fps{0.0};
    std::size_t frameCount{0};
    /// frameCount / fps.
    double durationSec{0.0};
};

VideoInfo probeVideo(const std::filesystem::path& video);

/// Frames at t = 0, interval, 2*interval, ... (nearest decoded frame at or after
/// each target) plus the last frame. Images are written as PNG into `frameDir`.
std::vector<FrameSample> sampleFrames(const std::filesystem::path& video, double intervalSec,
                                      const std::filesystem::path& frameDir);

// ---- segmentation ----------------------------------------------------------

enum class ChangeType
{
    Annotation,
    HumanMotion,
    Cursor,
    NewSlide,
    Transition,
};

const char* toString(ChangeType type);

struct SameSlideVerdict
{
    bool isSameSlide{true};
    double confidence{1.0};
    std::string reason;
    ChangeType changeType{ChangeType::Cursor};
};

SameSlideVerdict compareFrames(const FrameSample& a, const FrameSample& b, const gateway::Gateway& gateway);

struct SectionSpan
{
    double startSec{0.0};
    double endSec{0.0};
    FrameSample keyFrame;
};

inline constexpr int kDefaultHashThreshold = 10;
inline constexpr double kDefaultMinSectionSec = 5.0;
inline constexpr double kDefaultIntervalSec = 2.0;

struct SegmentOptions
{
    /// Pairs with a Hamming distance above this are sent to the sameSlide prompt.
    int hashThreshold{kDefaultHashThreshold};
    double minSectionSec{kDefaultMinSectionSec};
};

/// `durationSec` closes the last section; defaults to the last sample time.
std::vector<SectionSpan> segmentSections(const std::vector<FrameSample>& samples, const gateway::Gateway& gateway,
                                         std::optional<double> durationSec = std::nullopt,
                                         const SegmentOptions& options = {});

// ---- transcript ------------------------------------------------------------

std::vector<content::TranscriptSegment> parseSrt(const std::string& text);
std::vector<content::TranscriptSegment> parseVtt(const std::string& text);
/// Picks the parser from the extension (.vtt, otherwise SRT).
std::vector<content::TranscriptSegment> loadTranscript(const std::filesystem::path& file);

/// Each segment goes to the span holding its midpoint, clipped to that span.
std::vector<std::vector<content::TranscriptSegment>>
assignTranscript(const std::vector<content::TranscriptSegment>& segments, const std::vector<content::TimeSpan>& spans);

// ---- per-section content ---------------------------------------------------

struct SlideExtract
{
    std::string title;
    std::vector<std::string> mainTopics;
    bool hasHumanPresence{false};
    bool hasAnnotations{false};
    std::string contentFingerprint;
    std::string description;
    std::optional<std::vector<std::string>> equations;
    std::optional<std::vector<std::string>> diagrams;
};

SlideExtract extractSlide(const std::filesystem::path& keyFrame, const gateway::Gateway& gateway);

/// Joined transcript text used for quiz generation and highlight prompts.
std::string transcriptText(const std::vector<content::TranscriptSegment>& segments, const std::string& sep = " ");

content::DifficultyBank generateQuizBank(const content::Section& section, const gateway::Gateway& gateway,
                                         int questionsPerSection);

/// Raw provider box on a `reference` canvas to normalized [0,1] coordinates.
/// Returns nullopt for degenerate boxes (zero area after clamping).
std::optional<content::Rect> normalizeBox(const std::vector<double>& raw, const content::BoxReference& reference);

/// Span of the transcript segment(s) that `text` refers to, or nullopt.
std::optional<content::TimeSpan> matchTranscriptSpan(const std::string& text,
                                                     const std::vector<content::TranscriptSegment>& segments);

inline constexpr double kFuzzyMatchThreshold = 0.6;

std::vector<content::HighlightEntry> generateHighlights(const content::Section& section,
                                                        const std::filesystem::path& keyFrame,
                                                        const gateway::Gateway& gateway);

// ---- examples --------------------------------------------------------------

struct ExampleSource
{
    std::filesystem::path file;
    double triggerSec{0.0};
    std::string title;
};

/// HTML files in `dir` carrying `<meta name="lecture:trigger" content="SECONDS">`.
/// Untagged files are skipped; sorted by trigger time then file name.
std::vector<ExampleSource> scanExamples(const std::filesystem::path& dir);

// ---- pipeline --------------------------------------------------------------

struct PipelineConfig
{
    std::filesystem::path outputDir;
    std::string id{"lecture"};
    std::string title;
    double intervalSec{kDefaultIntervalSec};
    int questionsPerSection{3};
    SegmentOptions segment;
    /// Fixed creation stamp; empty means the current UTC time.
    std::string createdAt;
    /// Where sampled frames go; defaults to a directory under outputDir that is removed afterwards.
    std::optional<std::filesystem::path> workDir;
};

/// Full stage-1 run. Writes the bundle to config.outputDir and returns it.
/// Every failure is rethrown as StageError naming the stage.
content::LectureBundle buildBundle(const std::filesystem::path& video, const std::filesystem::path& transcript,
                                   const std::optional<std::filesystem::path>& examplesDir,
                                   const PipelineConfig& config, const gateway::Gateway& gateway);

} // namespace lecturekit::preprocess
