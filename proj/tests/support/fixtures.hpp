#pragma once

#include "lecturekit/content/model.hpp"
#include "lecturekit/gateway/mock_provider.hpp"
#include "lecturekit/gateway/templates.hpp"
#include "lecturekit/media/image_search.hpp"
#include "lecturekit/media/speech.hpp"
#include "lecturekit/session/session.hpp"

#include <opencv2/core.hpp>

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace lecturekit::testing
{

namespace fs = std::filesystem;

/// Scratch directory removed on destruction.
class TempDir
{
  public:
    explicit TempDir(const std::string& tag = "lk");
    ~TempDir();
    TempDir(TempDir&& other) noexcept;
    TempDir& operator=(TempDir&&) = delete;
    TempDir(const TempDir&) = delete;

    const fs::path& path() const
    {
        return path_;
    }
    fs::path operator/(const std::string& child) const
    {
        return path_ / child;
    }

  private:
    fs::path path_;
};

fs::path sourceDir();
std::string readText(const fs::path& file);
void writeText(const fs::path& file, const std::string& body);
/// Verbatim template text kept under tests/fixtures/prompts.
std::string promptFixture(gateway::TemplateId id);

inline constexpr int kSlideWidth = 640;
inline constexpr int kSlideHeight = 360;

/// Three hand-made slide layouts (0, 1, 2) with clearly different ink placement.
cv::Mat slideImage(int variant, int width = kSlideWidth, int height = kSlideHeight);
/// Pen strokes in the lower-left corner, `strokes` of them; leaves the layout alone.
void annotate(cv::Mat& slide, int strokes);
void writePng(const cv::Mat& image, const fs::path& file);

struct SlideVideo
{
    fs::path file;
    double fps{10.0};
    double durationSec{0.0};
    /// Ground-truth slide change times.
    std::vector<double> boundaries;
};

/// MJPG .avi showing `slides` in order, `secondsPerSlide` each. Frames from
/// `annotateAfterSec` into a slide onwards carry growing pen annotations.
SlideVideo writeSlideVideo(const fs::path& file, const std::vector<int>& slides, double secondsPerSlide,
                           double fps = 10.0, std::optional<double> annotateAfterSec = std::nullopt);

/// One cue per `cueSec`, cycling through lecture sentences.
std::vector<content::TranscriptSegment> lectureTranscript(double durationSec, double cueSec = 2.5);
void writeSrt(const fs::path& file, const std::vector<content::TranscriptSegment>& segments);
void writeExample(const fs::path& file, double triggerSec, const std::string& title);

/// Output of the mock pipeline over the synthetic 3-slide lecture.
struct PipelineFixture
{
    TempDir dir{"pipeline"};
    SlideVideo video;
    fs::path bundleDir;
    content::LectureBundle bundle;
    std::shared_ptr<gateway::MockProvider> mock;
};

/// Slides 0,1,2 for 10 s each at 10 fps, annotations on every slide after 4 s,
/// one tagged example at 12 s; preprocessed with the mock at a 2 s interval.
PipelineFixture buildPipelineFixture();

/// Hand-authored bundle with known content: atom (nucleus/nucleon), perceptron
/// (formula), standard model (gluon highlight). 10 s sections, 30 s total,
/// examples at 12 s and 25 s. Quiz banks come from the mock provider.
struct HandBundle
{
    TempDir dir{"bundle"};
    fs::path root;
    std::shared_ptr<const content::LectureBundle> bundle;
};

HandBundle buildHandBundle(const std::string& id = "physics-101");

struct SessionRig
{
    std::shared_ptr<gateway::MockProvider> mock;
    std::shared_ptr<gateway::Gateway> gateway;
    std::shared_ptr<media::StubSpeechBackend> speech;
    std::shared_ptr<media::StubImageSearch> images;
    session::SessionServices services() const;
};

SessionRig makeRig(bool avatarAvailable = true);

session::SessionConfig sessionConfig(const std::string& id, std::vector<std::string> interests = {});

/// Fixed wall clock for reproducible logs.
std::string fixedClock();

} // namespace lecturekit::testing
