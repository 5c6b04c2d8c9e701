#include "lecturekit/preprocess/pipeline.hpp"

#include "imaging/cv_bridge.hpp"

#include <opencv2/imgcodecs.hpp>
#include <opencv2/imgproc.hpp>
#include <opencv2/videoio.hpp>
#include <opencv2/videoio/registry.hpp>

#include <cmath>
#include <cstdio>
#include <set>

namespace lecturekit::preprocess
{

namespace fs = std::filesystem;

namespace
{

cv::VideoCapture openVideo(const fs::path& video)
{
    if (cv::videoio_registry::getStreamBackends().empty())
        throw ExtractionToolMissing("no video decoding backend is available");
    if (!fs::is_regular_file(video))
        throw VideoUnreadable(video.string() + " does not exist");
    cv::VideoCapture cap(video.string());
    if (!cap.isOpened())
        throw VideoUnreadable(video.string());
    return cap;
}

} // namespace

VideoInfo probeVideo(const fs::path& video)
{
    cv::VideoCapture cap = openVideo(video);
    VideoInfo info;
    info.fps = cap.get(cv::CAP_PROP_FPS);
    if (!(info.fps > 0.0) || !std::isfinite(info.fps))
        throw VideoUnreadable(video.string() + " reports no frame rate");
    // Container frame counts are estimates; count decodable frames instead.
    while (cap.grab())
        ++info.frameCount;
    if (info.frameCount == 0)
        throw VideoUnreadable(video.string() + " has no frames");
    info.durationSec = static_cast<double>(info.frameCount) / info.fps;
    return info;
}

std::vector<FrameSample> sampleFrames(const fs::path& video, double intervalSec, const fs::path& frameDir)
{
    if (!(intervalSec > 0.0))
        throw PreconditionFailed("sampling interval must be positive");
    VideoInfo info = probeVideo(video);

    const std::size_t last = info.frameCount - 1;
    const double lastTime = static_cast<double>(last) / info.fps;
    std::set<std::size_t> wanted;
    for (std::size_t k = 0;; ++k)
    {
        double target = static_cast<double>(k) * intervalSec;
        if (target > lastTime + 1e-9)
            break;
        auto idx = static_cast<std::size_t>(std::ceil(target * info.fps - 1e-6));
        wanted.insert(std::min(idx, last));
    }
    wanted.insert(last);

    fs::create_directories(frameDir);
    cv::VideoCapture cap = openVideo(video);
    std::vector<FrameSample> samples;
    samples.reserve(wanted.size());
    auto next = wanted.begin();
    for (std::size_t idx = 0; next != wanted.end(); ++idx)
    {
        if (!cap.grab())
            throw VideoUnreadable(video.string() + " ended early at frame " + std::to_string(idx));
        if (idx != *next)
            continue;
        ++next;

        cv::Mat frame;
        if (!cap.retrieve(frame) || frame.empty())
            throw VideoUnreadable(video.string() + " frame " + std::to_string(idx) + " did not decode");
        char name[32];
        std::snprintf(name, sizeof name, "frame_%06zu.png", idx);
        fs::path out = frameDir / name;
        if (!cv::imwrite(out.string(), frame))
            throw Error("IoError", "cannot write " + out.string());

        cv::Mat gray;
        if (frame.channels() == 1)
            gray = frame;
        else
            cv::cvtColor(frame, gray, frame.channels() == 4 ? cv::COLOR_BGRA2GRAY : cv::COLOR_BGR2GRAY);

        FrameSample s;
        s.timestampSec = static_cast<double>(idx) / info.fps;
        s.imageRef = out;
        s.perceptualHash = imaging::perceptualHash(imaging::detail::fromMat(gray));
        samples.push_back(std::move(s));
    }
    return samples;
}

} // namespace lecturekit::preprocess
