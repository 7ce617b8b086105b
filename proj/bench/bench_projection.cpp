// Serial reference vs OpenMP corpus projection on a synthetic corpus.

#include <benchmark/benchmark.h>

#include "generators.hpp"
#include "xlproj/corpus.hpp"

namespace {

using namespace xlproj;

const CorpusInputs& corpus() {
  static const CorpusInputs inputs = [] {
    gen::Rng rng(7);
    CorpusInputs in;
    for (std::size_t i = 0; i < 4000; ++i) {
      const std::size_t n = gen::uniform(rng, 8, 30), m = gen::uniform(rng, 8, 30);
      in.labeled.push_back({gen::sentence(rng, i, n), gen::disjoint_spans(rng, n, 5)});
      in.targets.push_back(gen::sentence(rng, i, m));
      in.alignments.push_back(gen::one_to_one_alignment(rng, n, m, 0.85));
    }
    return in;
  }();
  return inputs;
}

ProjectionConfig config_for(int solver) {
  ProjectionConfig cfg;
  cfg.solver = solver == 0 ? SolverKind::kGreedy : SolverKind::kRelaxedMwis;
  return cfg;
}

void BM_Serial(benchmark::State& state) {
  const auto cfg = config_for(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(project_corpus_serial(corpus(), cfg));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(corpus().size()));
}

void BM_Parallel(benchmark::State& state) {
  const auto cfg = config_for(static_cast<int>(state.range(0)));
  const int jobs = static_cast<int>(state.range(1));
  for (auto _ : state)
    benchmark::DoNotOptimize(project_corpus(corpus(), cfg, ErrorPolicy::kFail, jobs));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(corpus().size()));
}

}  // namespace

// range(0): 0 = greedy, 1 = interval relaxation.
BENCHMARK(BM_Serial)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Parallel)
    ->ArgsProduct({{0, 1}, {1, 2, 4, 8}})
    ->Unit(benchmark::kMillisecond)
    ->UseRealTime();

BENCHMARK_MAIN();
