#include "lecturekit/gateway/gateway.hpp"
#include "lecturekit/preprocess/pipeline.hpp"

#include <benchmark/benchmark.h>

#include <sstream>

using namespace lecturekit;

namespace
{

std::string srt(int cues)
{
    std::ostringstream out;
    for (int i = 0; i < cues; ++i)
    {
        int a = i * 3, b = a + 3;
        auto stamp = [](int s) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%02d:%02d:%02d,000", s / 3600, (s / 60) % 60, s % 60);
            return std::string(buf);
        };
        out << i + 1 << "\n" << stamp(a) << " --> " << stamp(b) << "\n"
            << "The weighted sum passes through a threshold, cue " << i << ".\n\n";
    }
    return out.str();
}

} // namespace

static void BM_ParseSrt(benchmark::State& state)
{
    const std::string text = srt(static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(preprocess::parseSrt(text));
    state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations()) * static_cast<std::int64_t>(text.size()));
}
BENCHMARK(BM_ParseSrt)->Arg(100)->Arg(2000);

static void BM_ParseStructured(benchmark::State& state)
{
    using gateway::Schema;
    Schema schema = Schema::object({{"title", Schema::string()},
                                    {"mainTopics", Schema::array(Schema::string())},
                                    {"hasAnnotations", Schema::boolean()}});
    const std::string raw = "Here you go:\n```json\n{\"title\": \"Perceptron\", \"mainTopics\": [\"weights\", "
                            "\"bias\", \"activation\",], \"hasAnnotations\": false}\n```\n";
    for (auto _ : state)
        benchmark::DoNotOptimize(gateway::parseStructured(raw, schema));
}
BENCHMARK(BM_ParseStructured);

BENCHMARK_MAIN();
