#include "lecturekit/service/cli.hpp"

#include "lecturekit/content/bundle_io.hpp"
#include "lecturekit/gateway/http_provider.hpp"
#include "lecturekit/layout/layout.hpp"
#include "lecturekit/preprocess/pipeline.hpp"
#include "lecturekit/service/server.hpp"

#include <CLI11.hpp>
#include <opencv2/imgcodecs.hpp>
#include <opencv2/imgproc.hpp>

#include <atomic>
#include <csignal>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <thread>

namespace lecturekit::service
{

using nlohmann::json;
namespace fs = std::filesystem;

namespace
{

std::atomic<bool> gInterrupted{false};

void onSignal(int)
{
    gInterrupted = true;
}

bool envFlag(const char* name)
{
    const char* v = std::getenv(name);
    return v && std::string(v) == "1";
}

std::string envOr(const char* name, std::string fallback)
{
    const char* v = std::getenv(name);
    return v && *v ? std::string(v) : fallback;
}

json gridJson(const layout::OccupancyGrid& grid)
{
    json rows = json::array();
    for (int r = 0; r < grid.rows(); ++r)
    {
        std::string line;
        for (int c = 0; c < grid.cols(); ++c)
            line += grid.occupied(c, r) ? '#' : '.';
        rows.push_back(line);
    }
    return rows;
}

int runPreprocess(const fs::path& video, const fs::path& transcript, const std::optional<fs::path>& examples,
                  preprocess::PipelineConfig config, bool mock)
{
    gateway::Gateway gw(gateway::providerFromEnvironment(mock || envFlag("LLM_MOCK")));
    auto bundle = preprocess::buildBundle(video, transcript, examples, config, gw);
    std::size_t items = 0;
    for (const auto& s : bundle.sections)
        for (const auto& [level, bank] : s.quizzes)
            items += bank.size();
    json out = {{"bundle", config.outputDir.string()},
                {"id", bundle.id},
                {"durationSec", bundle.durationSec},
                {"sections", bundle.sections.size()},
                {"quizItems", items},
                {"examples", bundle.examples.size()}};
    std::cout << out.dump(2) << "\n";
    return 0;
}

int runServe(ServerOptions options)
{
    Server server(std::move(options));
    int port = server.start();
    std::cerr << "serving " << server.bundleCount() << " lecture(s) on http://" << "127.0.0.1:" << port << "\n";
    std::signal(SIGINT, onSignal);
    std::signal(SIGTERM, onSignal);
    while (!gInterrupted.load())
        std::this_thread::sleep_for(std::chrono::milliseconds(100));
    server.stop();
    return 0;
}

} // namespace

json inspectLayout(const fs::path& slide, double anchorX, double anchorY, const std::string& outPrefix, int cols,
                   int rows)
{
    auto gray = imaging::loadGray(slide);
    auto boxes = layout::detectContentBoxes(gray);
    auto grid = layout::rasterize(boxes, cols, rows);
    layout::PlanOptions options;
    options.cols = cols;
    options.rows = rows;
    auto plan = layout::planOnGrid(grid, {anchorX, anchorY}, "", options);

    json boxList = json::array();
    for (const auto& b : boxes)
        boxList.push_back(content::rectToJson(b));
    json report = {{"slide", slide.string()},
                   {"width", gray.width},
                   {"height", gray.height},
                   {"anchor", {anchorX, anchorY}},
                   {"boxes", boxList},
                   {"grid", gridJson(grid)},
                   {"occupiedCells", grid.occupiedCount()},
                   {"region",
                    {{"rect", content::rectToJson(plan.region.rect)},
                     {"col", plan.region.cells.col},
                     {"row", plan.region.cells.row},
                     {"width", plan.region.cells.width},
                     {"height", plan.region.cells.height},
                     {"cellCount", plan.region.cellCount},
                     {"distanceToAnchor", plan.region.distanceToAnchor}}},
                   {"estimatedCapacityChars", plan.estimatedCapacityChars},
                   {"modal", plan.modal}};

    if (!outPrefix.empty())
    {
        cv::Mat img = cv::imread(slide.string(), cv::IMREAD_COLOR);
        if (img.empty())
            throw imaging::ImageUndecodable(slide.string());
        auto px = [&](const content::Rect& r) {
            return cv::Rect(cv::Point(static_cast<int>(r.x0 * img.cols), static_cast<int>(r.y0 * img.rows)),
                            cv::Point(static_cast<int>(r.x1 * img.cols), static_cast<int>(r.y1 * img.rows)));
        };
        for (const auto& b : boxes)
            cv::rectangle(img, px(b), cv::Scalar(0, 0, 255), 2);
        cv::Mat overlay = img.clone();
        cv::rectangle(overlay, px(plan.region.rect), cv::Scalar(0, 200, 0), cv::FILLED);
        cv::addWeighted(overlay, 0.35, img, 0.65, 0.0, img);
        cv::circle(img, cv::Point(static_cast<int>(anchorX * img.cols), static_cast<int>(anchorY * img.rows)), 6,
                   cv::Scalar(255, 0, 0), cv::FILLED);
        cv::imwrite(outPrefix + ".png", img);
        std::ofstream(outPrefix + ".json") << report.dump(2) << "\n";
    }
    return report;
}

int cliMain(int argc, char** argv)
{
    CLI::App app{"Lecture bundle preprocessing and interactive session server"};
    app.require_subcommand(1);

    // preprocess
    auto* pre = app.add_subcommand("preprocess", "Build a lecture bundle from a video and its transcript");
    std::string video, transcript, examples, out;
    preprocess::PipelineConfig config;
    bool preMock = false;
    pre->add_option("--video", video, "Lecture recording")->required()->check(CLI::ExistingFile);
    pre->add_option("--transcript", transcript, "SRT or WebVTT transcript")->required()->check(CLI::ExistingFile);
    pre->add_option("--examples", examples, "Directory of tagged HTML examples")->check(CLI::ExistingDirectory);
    pre->add_option("--out", out, "Bundle output directory")->required();
    pre->add_flag("--mock", preMock, "Use the offline mock model");
    pre->add_option("--interval", config.intervalSec, "Frame sampling interval in seconds")
        ->check(CLI::PositiveNumber);
    pre->add_option("--questions", config.questionsPerSection, "Questions per difficulty level")
        ->check(CLI::Range(1, 20));
    pre->add_option("--id", config.id, "Bundle id");
    pre->add_option("--title", config.title, "Lecture title");
    pre->add_option("--created-at", config.createdAt, "Fixed creation timestamp");
    pre->add_option("--hash-threshold", config.segment.hashThreshold, "Hash distance that triggers a slide check");
    pre->add_option("--min-section", config.segment.minSectionSec, "Shortest section in seconds");

    // serve
    auto* serve = app.add_subcommand("serve", "Serve bundles over HTTP");
    ServerOptions options;
    std::string bundleDir = envOr("BUNDLE_DIR", "");
    options.port = std::atoi(envOr("PORT", "8080").c_str());
    bool serveMock = false;
    serve->add_option("--bundle-dir", bundleDir, "Directory holding one or more bundles");
    serve->add_option("--port", options.port, "Listen port (0 picks one)");
    serve->add_option("--host", options.host, "Listen address");
    serve->add_flag("--mock", serveMock, "Use offline providers for text, speech and images");
    serve->add_option("--time-scale", options.timeScale, "Simulated seconds per real second")
        ->check(CLI::PositiveNumber);
    serve->add_option("--cors-origin", options.corsOrigin, "Allowed browser origin");

    // inspect layout
    auto* inspect = app.add_subcommand("inspect", "Debugging helpers");
    inspect->require_subcommand(1);
    auto* inspectLayoutCmd = inspect->add_subcommand("layout", "Show detected boxes, grid and chosen overlay region");
    std::string slide, outPrefix;
    std::vector<double> anchor{0.5, 0.5};
    int cols = layout::kDefaultCols, rows = layout::kDefaultRows;
    inspectLayoutCmd->add_option("--slide", slide, "Slide image")->required()->check(CLI::ExistingFile);
    inspectLayoutCmd->add_option("--anchor", anchor, "Normalized anchor x,y")->delimiter(',')->expected(2);
    inspectLayoutCmd->add_option("--out", outPrefix, "Write <prefix>.json and <prefix>.png");
    inspectLayoutCmd->add_option("--cols", cols, "Grid columns")->check(CLI::Range(1, 256));
    inspectLayoutCmd->add_option("--rows", rows, "Grid rows")->check(CLI::Range(1, 256));

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e)
    {
        return app.exit(e);
    }

    try
    {
        if (pre->parsed())
        {
            config.outputDir = out;
            std::optional<fs::path> ex;
            if (!examples.empty())
                ex = fs::path(examples);
            return runPreprocess(video, transcript, ex, config, preMock);
        }
        if (serve->parsed())
        {
            if (bundleDir.empty())
            {
                std::cerr << "error: --bundle-dir or BUNDLE_DIR is required\n";
                return 2;
            }
            options.bundleDir = bundleDir;
            // Without --mock each provider factory still honours LLM_MOCK / MEDIA_MOCK on its own.
            options.mock = serveMock;
            return runServe(std::move(options));
        }
        if (inspectLayoutCmd->parsed())
        {
            std::cout << inspectLayout(slide, anchor[0], anchor[1], outPrefix, cols, rows).dump(2) << "\n";
            return 0;
        }
    }
    catch (const preprocess::StageError& e)
    {
        std::cerr << "error [" << e.stage() << "/" << e.causeCode() << "]: " << e.what() << "\n";
        return 1;
    }
    catch (const Error& e)
    {
        std::cerr << "error [" << e.code() << "]: " << e.what() << "\n";
        return 1;
    }
    catch (const std::exception& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

} // namespace lecturekit::service
