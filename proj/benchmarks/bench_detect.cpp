#include "ilpfrac/backdoor.hpp"
#include "ilpfrac/reductions.hpp"

#include <benchmark/benchmark.h>

using namespace ilpfrac;

namespace {

GeneratedInstance fractured(uint64_t seed, int comps, int comp_size) {
  RandomFracturedParams p;
  p.seed = seed;
  p.num_components = comps;
  p.component_size = comp_size;
  p.num_global_vars = 1;
  p.num_global_cons = 1;
  return gen_random_fractured(p);
}

}  // namespace

static void BM_FractureNumberMixed(benchmark::State& state) {
  GeneratedInstance g = fractured(7, static_cast<int>(state.range(0)), 4);
  for (auto _ : state) {
    auto r = fracture_number(g.instance, Mode::Mixed, 4);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_FractureNumberMixed)->Arg(3)->Arg(6)->Arg(10);

static void BM_ExactDetectionSubsetSum(benchmark::State& state) {
  std::vector<Int> s;
  for (int i = 0; i < state.range(0); i++) s.push_back(Int(3 * i + 2));
  Instance inst = gen_subset_sum(s, Int(20));
  for (auto _ : state) {
    auto r = find_backdoor_exact(inst, 1, Mode::Constraint);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_ExactDetectionSubsetSum)->Arg(8)->Arg(16)->Arg(32);

static void BM_ApproxDetection(benchmark::State& state) {
  GeneratedInstance g = fractured(11, static_cast<int>(state.range(0)), 5);
  for (auto _ : state) {
    auto r = find_backdoor_approx(g.instance, 3, Mode::Mixed);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_ApproxDetection)->Arg(4)->Arg(8);

BENCHMARK_MAIN();
