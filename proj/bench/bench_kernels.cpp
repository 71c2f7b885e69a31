// Serial reference vs OpenMP kernels on synthetic workloads.
// Thread count follows OMP_NUM_THREADS / DTWS_THREADS.

#include <cstdlib>

#include <benchmark/benchmark.h>

#include "dtws/kernels.hpp"
#include "dtws/synthetic.hpp"

namespace {

using namespace dtws;

MeasureConfig plus_s(const std::vector<TimeSeries>& data) {
    MeasureConfig cfg;
    cfg.flatness = estimate_beta(data, default_shapelet_set());
    return cfg;
}

std::vector<TimeSeries> workload(std::size_t per_class) {
    return synthetic::trend_archetypes(per_class, 7, 120).series;
}

void pairwise(benchmark::State& state, Execution exec) {
    const auto series = workload(static_cast<std::size_t>(state.range(0)));
    const auto cfg = plus_s(series);
    const auto prepared = kernels::prepare_all(series, cfg, Execution::serial);
    for (auto _ : state) benchmark::DoNotOptimize(kernels::pairwise(prepared, cfg, exec));
    const auto n = static_cast<double>(series.size());
    state.counters["pairs/s"] = benchmark::Counter(n * (n - 1) / 2, benchmark::Counter::kIsIterationInvariantRate);
    state.counters["threads"] = exec == Execution::serial ? 1 : kernels::thread_count();
}

void cross(benchmark::State& state, Execution exec) {
    const auto train = workload(static_cast<std::size_t>(state.range(0)));
    const auto test = synthetic::trend_archetypes(static_cast<std::size_t>(state.range(0)), 8, 120).series;
    const auto cfg = plus_s(train);
    const auto rows = kernels::prepare_all(test, cfg, Execution::serial);
    const auto cols = kernels::prepare_all(train, cfg, Execution::serial);
    for (auto _ : state) benchmark::DoNotOptimize(kernels::cross(rows, cols, cfg, exec));
    state.counters["pairs/s"] = benchmark::Counter(static_cast<double>(rows.size() * cols.size()),
                                                   benchmark::Counter::kIsIterationInvariantRate);
}

void prepare(benchmark::State& state, Execution exec) {
    const auto series = workload(static_cast<std::size_t>(state.range(0)));
    const auto cfg = plus_s(series);
    for (auto _ : state) benchmark::DoNotOptimize(kernels::prepare_all(series, cfg, exec));
}

void BM_PairwiseSerial(benchmark::State& s) { pairwise(s, Execution::serial); }
void BM_PairwiseParallel(benchmark::State& s) { pairwise(s, Execution::parallel); }
void BM_CrossSerial(benchmark::State& s) { cross(s, Execution::serial); }
void BM_CrossParallel(benchmark::State& s) { cross(s, Execution::parallel); }
void BM_PrepareSerial(benchmark::State& s) { prepare(s, Execution::serial); }
void BM_PrepareParallel(benchmark::State& s) { prepare(s, Execution::parallel); }

}  // namespace

BENCHMARK(BM_PairwiseSerial)->Arg(5)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PairwiseParallel)->Arg(5)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CrossSerial)->Arg(5)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CrossParallel)->Arg(5)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PrepareSerial)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PrepareParallel)->Arg(20)->Unit(benchmark::kMillisecond);

int main(int argc, char** argv) {
    if (const char* env = std::getenv("DTWS_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) dtws::kernels::set_thread_count(n);
    }
    benchmark::Initialize(&argc, argv);
    if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
    benchmark::RunSpecifiedBenchmarks();
    benchmark::Shutdown();
    return 0;
}
