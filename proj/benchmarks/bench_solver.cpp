#include <benchmark/benchmark.h>

#include "mixweyl/app/scenario.hpp"
#include "mixweyl/recurrence.hpp"
#include "mixweyl/weyl.hpp"

namespace {

using namespace mixweyl;

CoefficientSet model_at(const char* name, Bits bits)
{
    app::Scenario s = app::builtin_scenario(name);
    s.precision = PrecisionConfig::big(bits);
    return s.model();
}

void BM_Propagate(benchmark::State& state)
{
    const Bits bits = state.range(0);
    const CoefficientSet model = model_at("ex4.1b", bits);
    const Scalar lambda = Scalar::i(bits);
    for (auto _ : state) {
        benchmark::DoNotOptimize(propagate(model, lambda, {Scalar::one(bits), Scalar::zero(bits)}, 200));
    }
}
BENCHMARK(BM_Propagate)->Arg(53)->Arg(256)->Arg(1024)->Unit(benchmark::kMicrosecond);

void BM_DiscSequence(benchmark::State& state, const char* name)
{
    const CoefficientSet model = model_at(name, 256);
    const Scalar lambda = Scalar::i(256);
    for (auto _ : state) {
        benchmark::DoNotOptimize(disc_sequence(model, lambda, Real(0, 256), state.range(0)));
    }
}
BENCHMARK_CAPTURE(BM_DiscSequence, free, "free")->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_DiscSequence, ex4_2a, "ex4.2a")->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_Classify(benchmark::State& state, const char* name)
{
    const CoefficientSet model = model_at(name, 256);
    const Scalar lambda = Scalar::i(256);
    for (auto _ : state) {
        benchmark::DoNotOptimize(classify(model, lambda, Real(0, 256)));
    }
}
BENCHMARK_CAPTURE(BM_Classify, ex4_1a, "ex4.1a")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Classify, ex4_2b, "ex4.2b")->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
