#include "ilpfrac/backdoor.hpp"
#include "ilpfrac/errors.hpp"
#include "ilpfrac/reductions.hpp"
#include "ilpfrac/solve.hpp"

#include "doctest.h"

#include <algorithm>
#include <set>
#include <string>
#include <vector>

using namespace ilpfrac;

namespace {

// independent 3-colorability check by direct enumeration
bool three_colorable(const SimpleGraph& g) {
  std::vector<int> color(size_t(g.n), 0);
  auto rec = [&](auto&& self, int v) -> bool {
    if (v == g.n) return true;
    for (int c = 0; c < 3; ++c) {
      bool ok = true;
      for (auto [a, b] : g.edges) {
        int other = a == v ? b : b == v ? a : -1;
        if (other >= 0 && other < v && color[size_t(other)] == c) ok = false;
      }
      if (!ok) continue;
      color[size_t(v)] = c;
      if (self(self, v + 1)) return true;
    }
    return false;
  };
  return rec(rec, 0);
}

bool subset_sums_to(const std::vector<Int>& s, const Int& target) {
  const size_t n = s.size();
  for (size_t mask = 0; mask < (size_t(1) << n); ++mask) {
    Int sum = 0;
    for (size_t i = 0; i < n; ++i)
      if (mask >> i & 1) sum += s[i];
    if (sum == target) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("graph json round-trips and validates") {
  SimpleGraph g;
  g.n = 4;
  g.edges = {{0, 1}, {2, 3}, {1, 2}};
  g.parts = {{0, 1}, {2, 3}};
  SimpleGraph back = parse_graph(serialize_graph(g));
  CHECK(back == g);

  CHECK_THROWS_AS(parse_graph("[]"), ParseError);
  CHECK_THROWS_AS(parse_graph(R"({"n": 2, "edges": [[0, 0]]})"), ParseError);
  CHECK_THROWS_AS(parse_graph(R"({"n": 2, "edges": [[0, 2]]})"), ParseError);
  CHECK_THROWS_AS(parse_graph(R"({"n": 2, "edges": [[0, 1], [1, 0]]})"), ParseError);
  CHECK_THROWS_AS(parse_graph(R"({"n": 2, "edges": [], "parts": [[0], [0]]})"), ParseError);
  SimpleGraph empty = parse_graph(R"({"n": 0, "edges": []})");
  CHECK(empty.n == 0);
}

TEST_CASE("splitmix64 matches the reference sequence") {
  SplitMix64 rng(0);
  CHECK(rng.next() == 0xE220A8397B1DCDAFULL);
  CHECK(rng.next() == 0x6E789E6AA1B965F4ULL);
  CHECK(rng.next() == 0x06C45D188009454FULL);
  SplitMix64 rng42(42);
  CHECK(rng42.next() == 0xBDD732262FEB6E95ULL);

  SplitMix64 a(7), b(7);
  for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());

  SplitMix64 c(123);
  for (int i = 0; i < 1000; ++i) {
    uint64_t v = c.below(10);
    CHECK(v < 10);
    long long w = c.range(-3, 3);
    CHECK(w >= -3);
    CHECK(w <= 3);
  }
}

TEST_CASE("nth_prime") {
  CHECK(nth_prime(1) == 2);
  CHECK(nth_prime(2) == 3);
  CHECK(nth_prime(3) == 5);
  CHECK(nth_prime(25) == 97);
  CHECK(nth_prime(100) == 541);
  CHECK_THROWS_AS(nth_prime(0), std::invalid_argument);
}

TEST_CASE("sidon sequences") {
  CHECK(sidon_sequence(0).empty());
  CHECK(sidon_sequence(1) == std::vector<long long>{0});
  CHECK(sidon_sequence(5) == std::vector<long long>{0, 11, 24, 34, 41});

  for (int n = 2; n <= 100; ++n) {
    std::vector<long long> s = sidon_sequence(n);
    REQUIRE(int(s.size()) == n);
    CHECK(std::is_sorted(s.begin(), s.end()));
    CHECK(s.back() <= 8LL * n * n);
    // all pairwise sums of distinct indices are distinct
    std::set<long long> sums;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) CHECK(sums.insert(s[size_t(i)] + s[size_t(j)]).second);
  }
}

TEST_CASE("subset-sum generator") {
  Instance inst = gen_subset_sum({Int(3), Int(0), Int(5)}, Int(8));
  CHECK(inst.vars.size() == 3);
  REQUIRE(inst.cons.size() == 1);
  // zero weights vanish from the row but keep their selector variable
  CHECK(inst.cons[0].terms.size() == 2);
  for (const Variable& v : inst.vars) {
    CHECK(v.lower == Int(0));
    CHECK(v.upper == Int(1));
    CHECK(v.objective == Int(0));
  }

  for (uint64_t seed = 1; seed <= 40; ++seed) {
    SplitMix64 rng(seed);
    std::vector<Int> s;
    const int n = 1 + int(rng.below(10));
    for (int i = 0; i < n; ++i) s.push_back(Int(rng.range(0, 30)));
    Int target = Int(rng.range(0, 60));
    Instance gen = gen_subset_sum(s, target);
    bool want = subset_sums_to(s, target);
    bool got = brute_force_oracle(gen).status != SolveStatus::Infeasible;
    CHECK(want == got);
  }
}

TEST_CASE("three-coloring generator shape and soundness") {
  SimpleGraph k3;
  k3.n = 3;
  k3.edges = {{0, 1}, {0, 2}, {1, 2}};
  GeneratedInstance gen = gen_three_coloring(k3);
  CHECK(gen.instance.vars.size() == 147);
  CHECK(gen.instance.cons.size() == 93);
  CHECK(gen.backdoor.mode == Mode::Variable);
  CHECK(gen.backdoor.ell == 25);
  REQUIRE(gen.backdoor.vars.size() == 3);
  CHECK(verify_backdoor(gen.instance, gen.backdoor));

  // every component after removing {c1,c2,c3} is a vertex gadget (25) or an
  // edge gadget (18)
  auto comps = components(gen.instance, gen.backdoor.vars, {});
  std::set<int> sizes;
  for (const SubIlp& c : comps) sizes.insert(c.vertex_count());
  CHECK(sizes == std::set<int>{18, 25});

  CapPolicy pol;
  pol.cap = 36;
  CHECK(solve_variable_backdoor(gen.instance, gen.backdoor.vars, pol).status !=
        SolveStatus::Infeasible);

  SimpleGraph k4;
  k4.n = 4;
  for (int u = 0; u < 4; ++u)
    for (int v = u + 1; v < 4; ++v) k4.edges.push_back({u, v});
  GeneratedInstance gen4 = gen_three_coloring(k4);
  CHECK(three_colorable(k3));
  CHECK_FALSE(three_colorable(k4));
  CHECK(solve_variable_backdoor(gen4.instance, gen4.backdoor.vars, pol).status ==
        SolveStatus::Infeasible);
}

TEST_CASE("multicolored clique generator") {
  SimpleGraph g;
  g.n = 6;
  g.parts = {{0, 1}, {2, 3}, {4, 5}};
  g.edges = {{0, 2}, {0, 4}, {2, 4}, {1, 3}, {3, 5}};
  GeneratedInstance gen = gen_multicolored_clique(g);
  CHECK(gen.instance.vars.size() == 17);
  CHECK(gen.instance.cons.size() == 15);
  CHECK(gen.backdoor.mode == Mode::Constraint);
  CHECK(gen.backdoor.ell == 3);
  // 2k + 3*C(k,2) rows for k = 3
  CHECK(gen.backdoor.cons.size() == 15);
  CHECK(verify_backdoor(gen.instance, gen.backdoor));

  // graph has the transversal triangle 0-2-4
  CHECK(solve_constraint_backdoor(gen.instance, gen.backdoor.cons).status !=
        SolveStatus::Infeasible);

  // dropping one triangle edge kills feasibility
  SimpleGraph h = g;
  h.edges = {{0, 2}, {0, 4}, {1, 3}, {3, 5}};
  GeneratedInstance gen2 = gen_multicolored_clique(h);
  CHECK(solve_constraint_backdoor(gen2.instance, gen2.backdoor.cons).status ==
        SolveStatus::Infeasible);

  // intra-part edges are ignored rather than encoded
  SimpleGraph intra = g;
  intra.edges.push_back({0, 1});
  GeneratedInstance gen3 = gen_multicolored_clique(intra);
  CHECK(gen3.instance.vars.size() == 17);

  SimpleGraph nocover;
  nocover.n = 3;
  nocover.parts = {{0}, {1}};
  CHECK_THROWS_AS(gen_multicolored_clique(nocover), std::invalid_argument);
}

TEST_CASE("random fractured instances are deterministic and well planted") {
  RandomFracturedParams p;
  p.seed = 99;
  p.num_components = 4;
  p.component_size = 5;
  p.num_global_vars = 2;
  p.num_global_cons = 1;
  GeneratedInstance a = gen_random_fractured(p);
  GeneratedInstance b = gen_random_fractured(p);
  CHECK(serialize_instance(a.instance) == serialize_instance(b.instance));
  CHECK(a.backdoor.vars == b.backdoor.vars);
  CHECK(a.backdoor.cons == b.backdoor.cons);

  for (uint64_t seed = 1; seed <= 25; ++seed) {
    RandomFracturedParams q;
    q.seed = seed;
    q.num_components = 1 + int(seed % 5);
    q.component_size = 3 + int(seed % 4);
    q.num_global_vars = int(seed % 3);
    q.num_global_cons = int(seed % 2) + (q.num_global_vars == 0 ? 1 : 0);
    GeneratedInstance gen = gen_random_fractured(q);
    CHECK(verify_backdoor(gen.instance, gen.backdoor));
    CHECK(gen.backdoor.ell == q.component_size);

    // all domains finite and the full product enumerable
    Int product = 1;
    for (const Variable& v : gen.instance.vars) {
      REQUIRE(v.lower.has_value());
      REQUIRE(v.upper.has_value());
      product *= *v.upper - *v.lower + 1;
    }
    CHECK(product <= Int(q.max_enum_product));
  }

  RandomFracturedParams bad;
  bad.num_components = 0;
  CHECK_THROWS_AS(gen_random_fractured(bad), std::invalid_argument);
}
