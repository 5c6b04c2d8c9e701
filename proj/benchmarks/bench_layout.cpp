#include "lecturekit/layout/layout.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace lecturekit;

namespace
{

layout::OccupancyGrid randomGrid(int cols, int rows, double density, unsigned seed)
{
    std::mt19937 rng(seed);
    std::bernoulli_distribution occ(density);
    layout::OccupancyGrid g(cols, rows);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            g.setOccupied(c, r, occ(rng));
    return g;
}

imaging::GrayImage busySlide()
{
    imaging::GrayImage img(1280, 720, 255);
    img.fillRect(60, 40, 1200, 120, 20);
    for (int i = 0; i < 8; ++i)
        img.fillRect(80, 170 + i * 50, 560, 190 + i * 50, 40);
    img.fillRect(760, 200, 1180, 560, 90);
    return img;
}

} // namespace

static void BM_SelectFreeRegion(benchmark::State& state)
{
    const int side = static_cast<int>(state.range(0));
    auto grid = randomGrid(side * 16 / 9, side, 0.3, 7);
    for (auto _ : state)
        benchmark::DoNotOptimize(layout::selectFreeRegion(grid, {0.3, 0.6}));
}
BENCHMARK(BM_SelectFreeRegion)->Arg(9)->Arg(14)->Arg(27)->Arg(45);

static void BM_DetectContentBoxes(benchmark::State& state)
{
    auto slide = busySlide();
    for (auto _ : state)
        benchmark::DoNotOptimize(layout::detectContentBoxes(slide));
}
BENCHMARK(BM_DetectContentBoxes);

static void BM_PlanOverlay(benchmark::State& state)
{
    auto slide = busySlide();
    std::string answer(static_cast<std::size_t>(state.range(0)), 'x');
    for (auto _ : state)
        benchmark::DoNotOptimize(layout::planOverlay(slide, {0.7, 0.8}, answer));
}
BENCHMARK(BM_PlanOverlay)->Arg(120)->Arg(900);

BENCHMARK_MAIN();
