// Parallel kernels against their serial references.
//   ./bench_kernels --benchmark_filter=Replicate
// Set OMP_NUM_THREADS to vary the thread count.

#include <algorithm>
#include <benchmark/benchmark.h>

#include "mco/joint_samplers.hpp"
#include "mco/kernels.hpp"
#include "mco/mco_engine.hpp"

using namespace mco;

namespace {

const JointSampler& sampler() {
    static const JointSampler s = JointSampler::iid(ScalarModel::lognormal(0, 1), 16);
    return s;
}

void BM_SampleLogWeights(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(sample_log_weights(sampler(), RandomStream(1), st.range(0)));
    st.SetItemsProcessed(st.iterations() * st.range(0));
}

void BM_SampleLogWeightsSerial(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(sample_log_weights_serial(sampler(), RandomStream(1), st.range(0)));
    st.SetItemsProcessed(st.iterations() * st.range(0));
}

void BM_Mco(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(mco_weighted(sampler(), uniform(16), st.range(0), RandomStream(2)));
    st.SetItemsProcessed(st.iterations() * st.range(0));
}

void BM_McoSerial(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(mco_weighted_serial(sampler(), uniform(16), st.range(0), RandomStream(2)));
    st.SetItemsProcessed(st.iterations() * st.range(0));
}

struct BootInput {
    std::vector<double> low, high, grid;
};

const BootInput& boot_input() {
    static const BootInput in = [] {
        BootInput b;
        b.low = sample(ScalarModel::gamma(4, 4), RandomStream(3), 4000);
        b.high = sample(ScalarModel::gamma(1, 1), RandomStream(4), 4000);
        std::sort(b.low.begin(), b.low.end());
        std::sort(b.high.begin(), b.high.end());
        for (int i = 0; i < 65; ++i) b.grid.push_back(0.05 * i);
        return b;
    }();
    return in;
}

void BM_Bootstrap(benchmark::State& st) {
    const auto& b = boot_input();
    for (auto _ : st)
        benchmark::DoNotOptimize(kernels::bootstrap_stop_loss_diff(b.low, b.high, b.grid, st.range(0), RandomStream(5)));
}

void BM_BootstrapSerial(benchmark::State& st) {
    const auto& b = boot_input();
    for (auto _ : st)
        benchmark::DoNotOptimize(
            kernels::bootstrap_stop_loss_diff_serial(b.low, b.high, b.grid, st.range(0), RandomStream(5)));
}

} // namespace

BENCHMARK(BM_SampleLogWeights)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SampleLogWeightsSerial)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Mco)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_McoSerial)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Bootstrap)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BootstrapSerial)->Arg(1000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
