#include "ilpfrac/reductions.hpp"
#include "ilpfrac/solve.hpp"

#include <benchmark/benchmark.h>

using namespace ilpfrac;

namespace {

SimpleGraph partite_clique(int k) {
  // complete k-partite graph with 2 vertices per part; every transversal is a clique
  SimpleGraph g;
  g.n = 2 * k;
  g.parts.resize(k);
  for (int i = 0; i < k; i++) g.parts[i] = {2 * i, 2 * i + 1};
  for (int u = 0; u < g.n; u++)
    for (int v = u + 1; v < g.n; v++)
      if (u / 2 != v / 2) g.edges.push_back({u, v});
  return g;
}

}  // namespace

static void BM_ConstraintDpClique(benchmark::State& state) {
  GeneratedInstance gen = gen_multicolored_clique(partite_clique(static_cast<int>(state.range(0))));
  for (auto _ : state) {
    auto r = solve_constraint_backdoor(gen.instance, gen.backdoor.cons);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_ConstraintDpClique)->Arg(3)->Arg(4);

static void BM_MixedSolveRandom(benchmark::State& state) {
  RandomFracturedParams p;
  p.seed = 5;
  p.num_components = static_cast<int>(state.range(0));
  p.component_size = 4;
  GeneratedInstance g = gen_random_fractured(p);
  for (auto _ : state) {
    auto r = solve_mixed_backdoor(g.instance, g.backdoor.vars, g.backdoor.cons);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_MixedSolveRandom)->Arg(3)->Arg(6);

static void BM_Oracle(benchmark::State& state) {
  RandomFracturedParams p;
  p.seed = 9;
  p.num_components = 3;
  p.component_size = 4;
  p.max_enum_product = static_cast<long long>(state.range(0));
  GeneratedInstance g = gen_random_fractured(p);
  for (auto _ : state) {
    auto r = brute_force_oracle(g.instance);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_Oracle)->Arg(10000)->Arg(100000);

BENCHMARK_MAIN();
