#include "fixtures.hpp"

#include "lecturekit/content/bundle_io.hpp"
#include "lecturekit/preprocess/pipeline.hpp"

#include <opencv2/imgcodecs.hpp>
#include <opencv2/imgproc.hpp>
#include <opencv2/videoio.hpp>

#include <atomic>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <unistd.h>

#ifndef LECTUREKIT_TEST_SOURCE_DIR
#error "LECTUREKIT_TEST_SOURCE_DIR must point at tests/"
#endif

namespace lecturekit::testing
{

namespace
{

std::atomic<int> gTempCounter{0};

const cv::Scalar kInk(30, 30, 30);
const cv::Scalar kPaper(250, 250, 250);

// Rows of short dark bars that look like words to the box detector.
void textLine(cv::Mat& img, int x, int y, int width, int height, int seed)
{
    int cx = x;
    int i = 0;
    while (cx < x + width)
    {
        int w = 18 + ((seed * 7 + i * 13) % 5) * 9;
        w = std::min(w, x + width - cx);
        cv::rectangle(img, cv::Rect(cx, y, w, height), kInk, cv::FILLED);
        cx += w + 8;
        ++i;
    }
}

std::string srtTime(double t)
{
    long ms = std::lround(t * 1000.0);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%02ld:%02ld:%02ld,%03ld", ms / 3600000, (ms / 60000) % 60, (ms / 1000) % 60,
                  ms % 1000);
    return buf;
}

const std::vector<std::string>& lectureSentences()
{
    static const std::vector<std::string> lines = {
        "Today we look at the structure of the atom.",
        "The nucleus holds protons and neutrons, which we call nucleons.",
        "Electrons occupy orbitals around the nucleus.",
        "A perceptron computes a weighted sum of its inputs plus a bias.",
        "The activation function turns that sum into a decision.",
        "Training adjusts the weights after every mistake.",
        "The standard model groups particles into quarks, leptons and bosons.",
        "Gluons carry the strong force between quarks.",
        "Photons carry the electromagnetic force.",
        "Together these forces explain most of what we observe.",
    };
    return lines;
}

} // namespace

TempDir::TempDir(const std::string& tag)
{
    path_ = fs::temp_directory_path() /
            ("lk-" + tag + "-" + std::to_string(::getpid()) + "-" + std::to_string(gTempCounter++));
    fs::remove_all(path_);
    fs::create_directories(path_);
}

TempDir::TempDir(TempDir&& other) noexcept : path_(std::move(other.path_))
{
    other.path_.clear();
}

TempDir::~TempDir()
{
    if (path_.empty())
        return;
    std::error_code ec;
    fs::remove_all(path_, ec);
}

fs::path sourceDir()
{
    return fs::path(LECTUREKIT_TEST_SOURCE_DIR);
}

std::string readText(const fs::path& file)
{
    std::ifstream in(file, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot read " + file.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void writeText(const fs::path& file, const std::string& body)
{
    if (file.has_parent_path())
        fs::create_directories(file.parent_path());
    std::ofstream out(file, std::ios::binary | std::ios::trunc);
    out << body;
}

std::string promptFixture(gateway::TemplateId id)
{
    static const std::map<gateway::TemplateId, std::string> names = {
        {gateway::TemplateId::SameSlide, "same_slide"},       {gateway::TemplateId::SlideExtract, "slide_extract"},
        {gateway::TemplateId::QuizGen, "quiz_gen"},           {gateway::TemplateId::HighlightGen, "highlight_gen"},
        {gateway::TemplateId::Clarify, "clarify"},            {gateway::TemplateId::VisualKeywords, "visual_keywords"},
        {gateway::TemplateId::BreakStory, "break_story"},
    };
    return readText(sourceDir() / "fixtures" / "prompts" / (names.at(id) + ".txt"));
}

cv::Mat slideImage(int variant, int width, int height)
{
    cv::Mat img(height, width, CV_8UC3, kPaper);
    const double sx = width / 640.0;
    const double sy = height / 360.0;
    auto X = [&](int v) { return static_cast<int>(v * sx); };
    auto Y = [&](int v) { return static_cast<int>(v * sy); };
    switch (variant % 3)
    {
    case 0:
        // Title across the top, bullet list down the left half.
        textLine(img, X(40), Y(24), X(420), Y(22), 1);
        for (int i = 0; i < 6; ++i)
        {
            cv::circle(img, cv::Point(X(48), Y(88 + i * 40)), std::max(2, X(5)), kInk, cv::FILLED);
            textLine(img, X(64), Y(80 + i * 40), X(240), Y(14), i + 2);
        }
        break;
    case 1:
        // Short title on the left, large diagram on the right.
        textLine(img, X(24), Y(24), X(180), Y(20), 3);
        cv::circle(img, cv::Point(X(470), Y(240)), X(110), kInk, cv::FILLED);
        cv::rectangle(img, cv::Rect(X(24), Y(150), X(200), Y(190)), kInk, cv::FILLED);
        break;
    default:
        // Table filling the upper two thirds, caption and a text line below.
        cv::rectangle(img, cv::Rect(X(20), Y(20), X(600), Y(210)), kInk, cv::FILLED);
        textLine(img, X(40), Y(246), X(560), Y(16), 6);
        textLine(img, X(200), Y(278), X(240), Y(18), 5);
        break;
    }
    return img;
}

void annotate(cv::Mat& slide, int strokes)
{
    const double s = slide.cols / 640.0;
    for (int i = 0; i < strokes; ++i)
    {
        cv::Point a(static_cast<int>((300 + 14 * i) * s), static_cast<int>((300 - 6 * i) * s));
        cv::Point b(static_cast<int>((360 + 14 * i) * s), static_cast<int>((330 - 6 * i) * s));
        cv::line(slide, a, b, cv::Scalar(40, 40, 220), std::max(2, static_cast<int>(3 * s)));
    }
}

void writePng(const cv::Mat& image, const fs::path& file)
{
    if (file.has_parent_path())
        fs::create_directories(file.parent_path());
    if (!cv::imwrite(file.string(), image))
        throw std::runtime_error("cannot write " + file.string());
}

SlideVideo writeSlideVideo(const fs::path& file, const std::vector<int>& slides, double secondsPerSlide, double fps,
                           std::optional<double> annotateAfterSec)
{
    if (file.has_parent_path())
        fs::create_directories(file.parent_path());
    cv::VideoWriter writer(file.string(), cv::VideoWriter::fourcc('M', 'J', 'P', 'G'), fps,
                           cv::Size(kSlideWidth, kSlideHeight));
    if (!writer.isOpened())
        throw std::runtime_error("cannot open video writer for " + file.string());

    const int perSlide = static_cast<int>(std::lround(secondsPerSlide * fps));
    SlideVideo out;
    out.file = file;
    out.fps = fps;
    for (std::size_t k = 0; k < slides.size(); ++k)
    {
        if (k > 0)
            out.boundaries.push_back(static_cast<double>(k) * secondsPerSlide);
        const cv::Mat base = slideImage(slides[k]);
        for (int f = 0; f < perSlide; ++f)
        {
            double tIn = f / fps;
            if (annotateAfterSec && tIn >= *annotateAfterSec)
            {
                cv::Mat frame = base.clone();
                // One more stroke every second after the annotation start.
                annotate(frame, 1 + static_cast<int>(tIn - *annotateAfterSec));
                writer.write(frame);
            }
            else
            {
                writer.write(base);
            }
        }
    }
    writer.release();
    out.durationSec = static_cast<double>(perSlide * slides.size()) / fps;
    return out;
}

std::vector<content::TranscriptSegment> lectureTranscript(double durationSec, double cueSec)
{
    std::vector<content::TranscriptSegment> out;
    const auto& lines = lectureSentences();
    std::size_t i = 0;
    for (double t = 0.0; t + 0.5 < durationSec; t += cueSec, ++i)
        out.push_back({t, std::min(durationSec, t + cueSec - 0.1), lines[i % lines.size()]});
    return out;
}

void writeSrt(const fs::path& file, const std::vector<content::TranscriptSegment>& segments)
{
    std::ostringstream ss;
    for (std::size_t i = 0; i < segments.size(); ++i)
        ss << (i + 1) << "\n"
           << srtTime(segments[i].startSec) << " --> " << srtTime(segments[i].endSec) << "\n"
           << segments[i].text << "\n\n";
    writeText(file, ss.str());
}

void writeExample(const fs::path& file, double triggerSec, const std::string& title)
{
    std::ostringstream ss;
    ss << "<!doctype html>\n<html><head><meta name=\"lecture:trigger\" content=\"" << triggerSec << "\">\n"
       << "<title>" << title << "</title></head>\n<body><canvas id=\"demo\"></canvas></body></html>\n";
    writeText(file, ss.str());
}

PipelineFixture buildPipelineFixture()
{
    PipelineFixture fx;
    fx.video = writeSlideVideo(fx.dir / "input/lecture.avi", {0, 1, 2}, 10.0, 10.0, 4.0);
    writeSrt(fx.dir / "input/lecture.srt", lectureTranscript(fx.video.durationSec));
    writeExample(fx.dir / "input/examples/perceptron_demo.html", 12.0, "Perceptron playground");
    fx.mock = std::make_shared<gateway::MockProvider>();
    gateway::Gateway gw(fx.mock);
    preprocess::PipelineConfig config;
    fx.bundleDir = fx.dir / "bundles/lecture-1";
    config.outputDir = fx.bundleDir;
    config.id = "lecture-1";
    config.title = "Synthetic physics lecture";
    config.intervalSec = 2.0;
    config.createdAt = "2026-01-01T00:00:00Z";
    fx.bundle = preprocess::buildBundle(fx.video.file, fx.dir / "input/lecture.srt", fx.dir / "input/examples",
                                        config, gw);
    return fx;
}

HandBundle buildHandBundle(const std::string& id)
{
    HandBundle hb;
    hb.root = hb.dir / id;
    fs::create_directories(hb.root);

    content::LectureBundle b;
    b.id = id;
    b.title = "Foundations of physics and learning";
    b.videoRef = "video.avi";
    b.durationSec = 30.0;
    b.createdAt = "2026-01-01T00:00:00Z";
    writeText(hb.root / b.videoRef, "not a real video");

    auto transcript = lectureTranscript(30.0, 2.5);
    auto within = [&](double a, double z) {
        std::vector<content::TranscriptSegment> out;
        for (auto s : transcript)
        {
            double mid = 0.5 * (s.startSec + s.endSec);
            if (mid >= a && mid < z)
            {
                s.startSec = std::max(s.startSec, a);
                s.endSec = std::min(s.endSec, z);
                out.push_back(s);
            }
        }
        return out;
    };

    struct Spec
    {
        std::string title;
        std::vector<std::string> concepts;
        std::optional<std::vector<std::string>> equations;
        std::string description;
    };
    const std::vector<Spec> specs = {
        {"Atomic Structure",
         {"nucleus", "nucleons", "electrons"},
         std::nullopt,
         "The atom has a dense nucleus made of nucleons. Electrons surround it. Most of the atom is empty space."},
        {"Perceptron",
         {"weights", "bias", "activation"},
         std::vector<std::string>{"y = w · x + b"},
         "A perceptron weighs its inputs. It adds a bias. An activation decides the output."},
        {"The Standard Model",
         {"quarks", "gluons", "leptons"},
         std::nullopt,
         "Quarks and leptons are matter particles. Gluons carry the strong force. Photons carry electromagnetism."},
    };

    gateway::Gateway gw(std::make_shared<gateway::MockProvider>());
    for (std::size_t i = 0; i < specs.size(); ++i)
    {
        content::Section s;
        char sid[24];
        std::snprintf(sid, sizeof sid, "s%03zu", i + 1);
        s.id = sid;
        s.startSec = 10.0 * static_cast<double>(i);
        s.endSec = s.startSec + 10.0;
        s.slideImageRef = content::sectionDir(i) + "/slide.png";
        writePng(slideImage(static_cast<int>(i)), hb.root / s.slideImageRef);
        s.title = specs[i].title;
        s.mainConcepts = specs[i].concepts;
        s.keyPoints = {specs[i].concepts[0] + " matters", specs[i].concepts[1] + " follows"};
        s.equations = specs[i].equations;
        s.description = specs[i].description;
        s.contentFingerprint = "fp" + std::to_string(i);
        s.transcript = within(s.startSec, s.endSec);
        s.quizzes = preprocess::generateQuizBank(s, gw, 3);
        b.sections.push_back(std::move(s));
    }

    // Highlights: the nucleus box early in section 1, gluons/quarks in section 3.
    b.sections[0].highlights.push_back({{0.06, 0.2, 0.45, 0.3}, "The nucleus holds protons and neutrons", content::TimeSpan{2.5, 5.0}});
    b.sections[2].highlights.push_back({{0.05, 0.36, 0.95, 0.6}, "Gluons carry the strong force between quarks",
                                        content::TimeSpan{22.5, 25.0}});
    b.sections[2].highlights.push_back({{0.05, 0.62, 0.95, 0.9}, "Photons carry the electromagnetic force",
                                        content::TimeSpan{25.0, 27.5}});
    b.sections[2].highlights.push_back({{0.3, 0.05, 0.7, 0.12}, "unmatched line", std::nullopt});

    writeExample(hb.root / "examples/perceptron_demo.html", 12.0, "Perceptron playground");
    writeExample(hb.root / "examples/forces.html", 25.0, "Forces explorer");
    b.examples.push_back({"s002", 12.0, "examples/perceptron_demo.html", "Perceptron playground"});
    b.examples.push_back({"s003", 25.0, "examples/forces.html", "Forces explorer"});

    content::saveBundle(b, hb.root);
    hb.bundle = std::make_shared<const content::LectureBundle>(content::loadBundle(hb.root));
    return hb;
}

session::SessionServices SessionRig::services() const
{
    return session::SessionServices{gateway, speech, images};
}

SessionRig makeRig(bool avatarAvailable)
{
    SessionRig rig;
    rig.mock = std::make_shared<gateway::MockProvider>();
    rig.gateway = std::make_shared<gateway::Gateway>(rig.mock);
    rig.speech = std::make_shared<media::StubSpeechBackend>(avatarAvailable);
    rig.images = std::make_shared<media::StubImageSearch>();
    return rig;
}

std::string fixedClock()
{
    return "2026-01-01T12:00:00Z";
}

session::SessionConfig sessionConfig(const std::string& id, std::vector<std::string> interests)
{
    session::SessionConfig c;
    c.sessionId = id;
    c.interests = std::move(interests);
    c.wallClock = fixedClock;
    return c;
}

} // namespace lecturekit::testing
