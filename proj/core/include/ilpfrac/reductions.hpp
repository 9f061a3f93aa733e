#pragma once

#include "ilpfrac/backdoor.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace ilpfrac {

// plain undirected graph for the reduction generators. vertices 0..n-1;
// parts (optional) partition the vertices for the multicolored constructions.
struct SimpleGraph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<std::vector<int>> parts;

  bool operator==(const SimpleGraph&) const = default;
};

SimpleGraph parse_graph(const std::string& json_text);
std::string serialize_graph(const SimpleGraph& g);

// deterministic rng for the generators (splitmix64); stdlib distributions are
// not pinned across platforms, so sampling is spelled out here
struct SplitMix64 {
  uint64_t state = 0;
  explicit SplitMix64(uint64_t seed) : state(seed) {}
  uint64_t next();
  uint64_t below(uint64_t bound);               // uniform in [0, bound)
  long long range(long long lo, long long hi);  // uniform in [lo, hi]
};

long long nth_prime(int n);  // 1-based, nth_prime(1) = 2
// Erdos-Turan construction: for the smallest prime p >= n, element i is
// 2p*i + (i^2 mod p), i = 0..n-1. pairwise sums distinct, max < 2p^2 <= 8n^2.
std::vector<long long> sidon_sequence(int n);

struct GeneratedInstance {
  Instance instance;
  Backdoor backdoor;  // the structure the construction plants
};

// binary selection variables against one global sum row; feasible iff some
// subset of s sums to target
Instance gen_subset_sum(const std::vector<Int>& s, const Int& target);

// feasible iff g is 3-colorable; plants variable backdoor {c1,c2,c3} to
// 25-compactness
GeneratedInstance gen_three_coloring(const SimpleGraph& g);

// g must carry parts; feasible iff g has a multicolored clique (one vertex per
// part, pairwise adjacent). plants a constraint backdoor to 3-compactness of
// size 2k + 3*C(k,2)
GeneratedInstance gen_multicolored_clique(const SimpleGraph& g);

struct RandomFracturedParams {
  uint64_t seed = 1;
  int num_components = 3;
  int component_size = 4;   // max vertices (vars+cons) per component
  int num_global_vars = 1;
  int num_global_cons = 1;
  long long coeff_bound = 3;
  long long domain_bound = 3;
  // domains are narrowed while generating so the full domain product stays
  // enumerable by the oracle
  long long max_enum_product = 100000;
};

// random instance with planted fracture structure: removing the globals leaves
// components of at most component_size vertices by construction
GeneratedInstance gen_random_fractured(const RandomFracturedParams& params);

}  // namespace ilpfrac
