// Serial reference prover against the OpenMP task-parallel one.
//   bench_prover --benchmark_filter=SC4

#include <benchmark/benchmark.h>

#include <string>

#include "sqdisk/packer.hpp"
#include "sqdisk/prover.hpp"

using namespace sqdisk;

namespace {

void run(benchmark::State& state, const std::string& lemma, int workers) {
    const ConstraintSystem sys = *find_lemma(lemma);
    ProverConfig cfg = default_config(sys);
    cfg.worker_count = workers;
    std::uint64_t boxes = 0;
    for (auto _ : state) {
        const ProofResult r = workers == 1 ? prove_serial(sys, cfg) : prove_parallel(sys, cfg);
        if (r.status != ProofStatus::Proved) state.SkipWithError("not proved");
        boxes = r.stats.boxes_explored;
        benchmark::DoNotOptimize(r.stats.max_depth);
    }
    state.counters["boxes"] = static_cast<double>(boxes);
    state.counters["boxes/s"] = benchmark::Counter(static_cast<double>(boxes) * state.iterations(), benchmark::Counter::kIsRate);
}

void BM_Serial(benchmark::State& state, const char* lemma) { run(state, lemma, 1); }
void BM_Parallel(benchmark::State& state, const char* lemma) { run(state, lemma, static_cast<int>(state.range(0))); }

void BM_Pack(benchmark::State& state) {
    const Instance in = gen_random(3, static_cast<std::size_t>(state.range(0)), 1.6, Distribution::Uniform);
    for (auto _ : state) {
        const PackResult r = pack(in);
        benchmark::DoNotOptimize(r.packing.placements.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK_CAPTURE(BM_Serial, SC1, "LEMMA_SC1")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Parallel, SC1, "LEMMA_SC1")->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK_CAPTURE(BM_Serial, SC3, "LEMMA_SC3")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Parallel, SC3, "LEMMA_SC3")->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK_CAPTURE(BM_Serial, SC4, "LEMMA_SC4")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Parallel, SC4, "LEMMA_SC4")->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK_CAPTURE(BM_Serial, MSC_NEG, "LEMMA_MSC_NEG")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Parallel, MSC_NEG, "LEMMA_MSC_NEG")->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Pack)->Arg(100)->Arg(10000)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
