#include "fixtures.hpp"
#include "oracles.hpp"

#include "lecturekit/layout/layout.hpp"

#include <doctest.h>

#include <random>

using namespace lecturekit;
using namespace lecturekit::layout;
namespace oracle = lecturekit::testing::oracle;

namespace
{

OccupancyGrid randomGrid(std::mt19937_64& rng, int maxSide, double density)
{
    std::uniform_int_distribution<int> side(1, maxSide);
    std::bernoulli_distribution occ(density);
    OccupancyGrid g(side(rng), side(rng));
    for (int r = 0; r < g.rows(); ++r)
        for (int c = 0; c < g.cols(); ++c)
            g.setOccupied(c, r, occ(rng));
    return g;
}

// Brute-force rasterization: a cell is occupied when a box overlaps its interior.
OccupancyGrid bruteRaster(const std::vector<Rect>& boxes, int cols, int rows)
{
    OccupancyGrid g(cols, rows);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
        {
            Rect cell{double(c) / cols, double(r) / rows, double(c + 1) / cols, double(r + 1) / rows};
            for (const auto& b : boxes)
                if (oracle::interiorsIntersect(cell, b, 0.0))
                    g.setOccupied(c, r);
        }
    return g;
}

} // namespace

TEST_CASE("detect: uniform white image has no boxes")
{
    imaging::GrayImage white(320, 180, 255);
    CHECK(detectContentBoxes(white).empty());
}

TEST_CASE("detect: one black square is found at its geometry within one cell")
{
    imaging::GrayImage img(480, 480, 255);
    img.fillRect(120, 120, 240, 240, 0);
    auto boxes = detectContentBoxes(img);
    REQUIRE(boxes.size() == 1);
    const double cell = 1.0 / kDefaultCols;
    CHECK(std::abs(boxes[0].x0 - 0.25) <= cell);
    CHECK(std::abs(boxes[0].y0 - 0.25) <= cell);
    CHECK(std::abs(boxes[0].x1 - 0.5) <= cell);
    CHECK(std::abs(boxes[0].y1 - 0.5) <= cell);
}

TEST_CASE("detect: full-bleed text slide yields a box over half the slide")
{
    cv::Mat color = lecturekit::testing::slideImage(2);
    lecturekit::testing::TempDir dir("detect");
    lecturekit::testing::writePng(color, dir / "slide.png");
    auto boxes = detectContentBoxes(dir / "slide.png");
    REQUIRE_FALSE(boxes.empty());
    CHECK(boxes.front().area() > 0.5);
}

TEST_CASE("rasterize: worked examples")
{
    CHECK(rasterize({}, 16, 9).occupiedCount() == 0);

    std::vector<Rect> left{{0.0, 0.0, 0.5, 1.0}};
    auto g = rasterize(left, 16, 9);
    CHECK(g.occupiedCount() == 72);
    for (int r = 0; r < 9; ++r)
        for (int c = 0; c < 16; ++c)
            CHECK(g.occupied(c, r) == (c <= 7));

    std::vector<Rect> tiny{{0.51, 0.51, 0.52, 0.52}};
    CHECK(rasterize(tiny, 16, 9).occupiedCount() == 1);
}

TEST_CASE("rasterize agrees with the brute-force oracle on random boxes")
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 300; ++trial)
    {
        std::vector<Rect> boxes;
        int n = 1 + static_cast<int>(rng() % 5);
        for (int i = 0; i < n; ++i)
        {
            double a = u(rng), b = u(rng), c = u(rng), d = u(rng);
            // Snap some edges onto cell boundaries to exercise the edge rule.
            if (trial % 3 == 0)
            {
                a = std::round(a * 8) / 8;
                c = std::round(c * 8) / 8;
            }
            boxes.push_back({std::min(a, c), std::min(b, d), std::max(a, c), std::max(b, d)});
        }
        CHECK(rasterize(boxes, 8, 6) == bruteRaster(boxes, 8, 6));
    }
}

TEST_CASE("selectFreeRegion: worked examples")
{
    OccupancyGrid empty(16, 9);
    auto full = selectFreeRegion(empty, {0.3, 0.7});
    CHECK(full.cellCount == 144);
    CHECK(full.rect == Rect{0, 0, 1, 1});

    std::vector<Rect> left{{0.0, 0.0, 0.5, 1.0}};
    auto right = selectFreeRegion(rasterize(left, 16, 9), {0.1, 0.1});
    CHECK(right.cellCount == 72);
    CHECK(right.cells == CellRect{8, 0, 8, 9});

    OccupancyGrid occupied(4, 3);
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 4; ++c)
            occupied.setOccupied(c, r);
    CHECK_THROWS_AS(selectFreeRegion(occupied, {0.5, 0.5}), NoFreeRegion);
    CHECK_THROWS_AS(selectFreeRegion(OccupancyGrid(2, 2), {0.5, 0.5}, 5), NoFreeRegion);
}

TEST_CASE("selectFreeRegion matches exhaustive enumeration on small grids")
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 400; ++trial)
    {
        auto g = randomGrid(rng, 8, 0.1 + 0.6 * u(rng));
        Point anchor = trial % 4 == 0 ? Point{0.5, 0.5} : Point{u(rng), u(rng)};
        auto expected = oracle::exhaustiveBest(g, anchor, 1);
        if (!expected)
        {
            CHECK_THROWS_AS(selectFreeRegion(g, anchor), NoFreeRegion);
            continue;
        }
        auto got = selectFreeRegion(g, anchor);
        CHECK(got.cells == CellRect{expected->col, expected->row, expected->width, expected->height});
    }
}

TEST_CASE("monotonicity: occupying a cell never grows the best region")
{
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 200; ++trial)
    {
        auto g = randomGrid(rng, 10, 0.3);
        int before = 0;
        try
        {
            before = selectFreeRegion(g, {0.5, 0.5}).cellCount;
        }
        catch (const NoFreeRegion&)
        {
            continue;
        }
        g.setOccupied(static_cast<int>(rng() % g.cols()), static_cast<int>(rng() % g.rows()));
        int after = 0;
        try
        {
            after = selectFreeRegion(g, {0.5, 0.5}).cellCount;
        }
        catch (const NoFreeRegion&)
        {
        }
        CHECK(after <= before);
    }
}

TEST_CASE("capacity and scrollable follow the declared constants")
{
    CHECK(capacityChars(72, 1.0) == 432);
    CHECK(capacityChars(72, 0.75) == 768);
    CHECK(capacityChars(6, 0.75) == 64);

    std::vector<Rect> left{{0.0, 0.0, 0.5, 1.0}};
    PlanOptions opts;
    opts.cols = 16;
    opts.rows = 9;
    std::string forty;
    for (int i = 0; i < 40; ++i)
        forty += "word ";
    auto plan = planOnGrid(rasterize(left, 16, 9), {0.1, 0.1}, forty, opts);
    CHECK(plan.region.cellCount == 72);
    CHECK(plan.estimatedCapacityChars >= 300);
    CHECK_FALSE(plan.scrollable);
    CHECK(plan.fontScale == 1.0);

    OccupancyGrid six(16, 9);
    for (int r = 0; r < 9; ++r)
        for (int c = 0; c < 16; ++c)
            six.setOccupied(c, r, !(r == 0 && c < 6));
    std::string fiveHundred;
    for (int i = 0; i < 500; ++i)
        fiveHundred += "word ";
    auto small = planOnGrid(six, {0.5, 0.5}, fiveHundred, opts);
    CHECK(small.region.cellCount == 6);
    CHECK(small.scrollable);
    CHECK(small.fontScale == kMinFontScale);
}

TEST_CASE("plan falls back to a modal overlay on a full grid")
{
    OccupancyGrid full(4, 4);
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
            full.setOccupied(c, r);
    auto plan = planOnGrid(full, {0.5, 0.5}, "short");
    CHECK(plan.modal);
    CHECK(plan.region.rect == Rect{0, 0, 1, 1});
}

TEST_CASE("blank slide plans the whole slide and is deterministic")
{
    imaging::GrayImage blank(640, 360, 255);
    auto a = planOverlay(blank, {0.2, 0.2}, "A short answer.");
    auto b = planOverlay(blank, {0.2, 0.2}, "A short answer.");
    CHECK(a.region.rect == Rect{0, 0, 1, 1});
    CHECK_FALSE(a.scrollable);
    CHECK(a.region == b.region);
    CHECK(a.estimatedCapacityChars == b.estimatedCapacityChars);
}

TEST_CASE("reserved regions are kept free")
{
    imaging::GrayImage blank(640, 360, 255);
    PlanOptions opts;
    opts.reserved.push_back({0.78, 0.72, 1.0, 1.0});
    auto plan = planOverlay(blank, {0.9, 0.9}, "text", opts);
    CHECK_FALSE(oracle::interiorsIntersect(plan.region.rect, opts.reserved[0]));
}
