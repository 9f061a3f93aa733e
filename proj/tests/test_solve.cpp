#include "ilpfrac/errors.hpp"
#include "ilpfrac/model.hpp"
#include "ilpfrac/reductions.hpp"
#include "ilpfrac/solve.hpp"

#include "doctest.h"

#include <fstream>
#include <sstream>

using namespace ilpfrac;

namespace {

Instance figure1() {
  std::ifstream in(std::string(ILPFRAC_TEST_DATA) + "/figure1.json");
  REQUIRE(in.good());
  std::ostringstream out;
  out << in.rdbuf();
  return parse_instance(out.str());
}

Instance one_var(MaybeInt lo, MaybeInt hi, Int obj) {
  Instance inst;
  add_variable(inst, "x", std::move(lo), std::move(hi), std::move(obj));
  return inst;
}

}  // namespace

TEST_CASE("domain_bound_ml closed form") {
  // 8 * 18! for the smallest parameters
  CHECK(domain_bound_ml(1, Int(1)) == Int("51218989645824000"));
  CHECK(domain_bound_ml(1, Int(2)) == Int("51218989645824000") * Int(262144));  // * 2^18
  CHECK(domain_bound_ml(1, Int(3)) > domain_bound_ml(1, Int(2)));
  CHECK(domain_bound_ml(2, Int(1)) > domain_bound_ml(1, Int(1)));
  CHECK_THROWS_AS(domain_bound_ml(-1, Int(1)), std::invalid_argument);
  CHECK_THROWS_AS(domain_bound_ml(1, Int(0)), std::invalid_argument);
}

TEST_CASE("instance_size_measure counts everything that scales the bound") {
  Instance inst;
  add_variable(inst, "a", Int(-2), Int(3), Int(4));
  add_variable(inst, "b", std::nullopt, std::nullopt, Int(0));
  add_constraint(inst, "r", {{0, Int(2)}, {1, Int(-5)}}, Int(-7));
  // 2 vars + 1 cons + |−2| + |3| + |4| + |2| + |−5| + |−7| = 26
  CHECK(instance_size_measure(inst) == Int(26));
}

TEST_CASE("oracle basics") {
  SolveResult r = brute_force_oracle(one_var(Int(4), Int(4), Int(1)));
  REQUIRE(r.status == SolveStatus::Optimal);
  CHECK(r.objective == Int(4));
  CHECK(r.assignment == std::vector<Int>{Int(4)});

  // maximize -x over [-3, 7]
  SolveResult neg = brute_force_oracle(one_var(Int(-3), Int(7), Int(-1)));
  REQUIRE(neg.status == SolveStatus::Optimal);
  CHECK(neg.objective == Int(3));
  CHECK(neg.assignment == std::vector<Int>{Int(-3)});

  // crossing bounds arrive as an empty domain
  Instance inst = one_var(Int(2), Int(2), Int(1));
  add_constraint(inst, "r", {{0, Int(1)}}, Int(3));
  CHECK(brute_force_oracle(inst).status == SolveStatus::Infeasible);

  SolveResult empty = brute_force_oracle(Instance{});
  REQUIRE(empty.status == SolveStatus::Optimal);
  CHECK(empty.objective == Int(0));

  CHECK_THROWS_AS(brute_force_oracle(one_var(Int(0), std::nullopt, Int(1))),
                  std::invalid_argument);
  CHECK_THROWS_AS(brute_force_oracle(one_var(Int(0), Int(1000000), Int(1)), 1000),
                  LimitError);
}

TEST_CASE("oracle on subset sums") {
  SolveResult yes = brute_force_oracle(gen_subset_sum({Int(3), Int(5), Int(7)}, Int(8)));
  REQUIRE(yes.status == SolveStatus::Optimal);
  CHECK(yes.assignment == std::vector<Int>{Int(1), Int(1), Int(0)});

  SolveResult no = brute_force_oracle(gen_subset_sum({Int(3), Int(5), Int(7)}, Int(2)));
  CHECK(no.status == SolveStatus::Infeasible);
}

TEST_CASE("oracle breaks ties toward the lexicographically smallest witness") {
  Instance inst;
  add_variable(inst, "x", Int(0), Int(1), Int(0));
  add_variable(inst, "y", Int(0), Int(1), Int(0));
  add_constraint(inst, "r", {{0, Int(1)}, {1, Int(1)}}, Int(1));
  SolveResult r = brute_force_oracle(inst);
  REQUIRE(r.status == SolveStatus::Optimal);
  CHECK(r.assignment == std::vector<Int>{Int(0), Int(1)});
}

TEST_CASE("solve_compact forces the figure1 residual") {
  // figure1 with y substituted at 5 and the coupling row dropped
  Instance inst;
  const Int rhs[] = {Int(6), Int(9), Int(14), Int(21), Int(30), Int(41)};
  for (int i = 1; i <= 7; ++i)
    add_variable(inst, "x" + std::to_string(i), Int(0), std::nullopt, Int(i));
  for (int i = 1; i <= 6; ++i)
    add_constraint(inst, "c" + std::to_string(i), {{i - 1, Int(i)}}, rhs[i - 1] - Int(5));

  CapPolicy pol;
  pol.cap = 10;
  SolveResult r = solve_compact(inst, 2, pol);
  REQUIRE(r.status == SolveStatus::OptimalWithinCap);
  CHECK(r.cap_hit);  // x7 runs to its artificial cap
  // x_i = (rhs - 5) / i = 1..6, x7 = 10: objective 91 + 70
  CHECK(r.objective == Int(161));
  CHECK(r.assignment ==
        std::vector<Int>{Int(1), Int(2), Int(3), Int(4), Int(5), Int(6), Int(10)});

  CHECK_THROWS_AS(solve_compact(figure1(), 2, pol), std::invalid_argument);

  SolveResult empty = solve_compact(Instance{}, 1);
  REQUIRE(empty.status == SolveStatus::Optimal);
  CHECK(empty.objective == Int(0));
}

TEST_CASE("paper-mL policy keeps the optimal label when bounds are forced") {
  Instance inst = one_var(Int(0), std::nullopt, Int(1));
  add_constraint(inst, "r", {{0, Int(2)}}, Int(4));
  CapPolicy pol;
  pol.paper_ml = true;
  SolveResult r = solve_compact(inst, 2, pol);
  REQUIRE(r.status == SolveStatus::Optimal);
  CHECK(r.objective == Int(2));
}

TEST_CASE("solve_constraint_backdoor") {
  Instance ss = gen_subset_sum({Int(3), Int(5), Int(7)}, Int(8));
  SolveResult dp = solve_constraint_backdoor(ss, {0});
  SolveResult oracle = brute_force_oracle(ss);
  REQUIRE(dp.status == SolveStatus::Optimal);
  CHECK(dp.objective == oracle.objective);
  CHECK(evaluate(ss, dp.assignment).feasible);

  CHECK(solve_constraint_backdoor(gen_subset_sum({Int(3), Int(5), Int(7)}, Int(2)), {0}).status ==
        SolveStatus::Infeasible);

  // empty backdoor on a compact instance defers to per-component optimization
  Instance inst;
  add_variable(inst, "a", Int(0), Int(3), Int(2));
  add_variable(inst, "b", Int(-1), Int(1), Int(-1));
  SolveResult free = solve_constraint_backdoor(inst, {});
  REQUIRE(free.status == SolveStatus::Optimal);
  CHECK(free.objective == Int(7));
  CHECK(free.assignment == std::vector<Int>{Int(3), Int(-1)});
}

TEST_CASE("solve_variable_backdoor on figure1 without the coupling row") {
  Instance inst = figure1();
  inst.cons.erase(inst.cons.begin());
  CapPolicy pol;
  pol.cap = 50;
  SolveResult r = solve_variable_backdoor(inst, {7}, pol);
  REQUIRE(r.status == SolveStatus::OptimalWithinCap);
  // y = 5 is forced by the divisibility rows; x7 is unconstrained and runs to
  // the cap, which must be reported
  CHECK(r.cap_hit);
  CHECK(r.objective == Int(91) + Int(7 * 50));
  CHECK(evaluate(inst, r.assignment).feasible);
  CHECK(r.assignment[6] == Int(50));
  CHECK(r.assignment[7] == Int(5));
}

TEST_CASE("solve_mixed_backdoor reproduces the figure1 optimum") {
  Instance inst = figure1();
  CapPolicy pol;
  pol.cap = 50;
  SolveResult r = solve_mixed_backdoor(inst, {7}, {0}, pol);
  REQUIRE(r.status == SolveStatus::OptimalWithinCap);
  CHECK_FALSE(r.cap_hit);
  CHECK(r.objective == Int(168));
  CHECK(r.assignment ==
        std::vector<Int>{Int(1), Int(2), Int(3), Int(4), Int(5), Int(6), Int(11), Int(5)});
}

TEST_CASE("solver limits surface as LimitError") {
  Instance inst = figure1();
  SolveLimits tiny;
  tiny.enum_nodes = 3;
  CHECK_THROWS_AS(solve_mixed_backdoor(inst, {7}, {0}, CapPolicy{}, tiny), LimitError);

  Instance ss = gen_subset_sum({Int(1), Int(2), Int(4), Int(8), Int(16)}, Int(21));
  SolveLimits nodp;
  nodp.dp_keys = 1;
  CHECK_THROWS_AS(solve_constraint_backdoor(ss, {0}, CapPolicy{}, nodp), LimitError);
}

TEST_CASE("solve_auto picks structure and falls back to the oracle") {
  CapPolicy pol;
  pol.cap = 50;
  AutoOutcome fig = solve_auto(figure1(), 6, pol);
  CHECK(fig.strategy == "mixed-backdoor");
  REQUIRE(fig.detection.has_value());
  CHECK(fig.detection->k == 2);
  CHECK(fig.result.objective == Int(168));

  AutoOutcome ss = solve_auto(gen_subset_sum({Int(3), Int(5), Int(7)}, Int(8)), 6);
  CHECK(ss.strategy == "constraint-backdoor");
  REQUIRE(ss.detection.has_value());
  CHECK(ss.detection->k == 1);
  CHECK(ss.result.status == SolveStatus::Optimal);

  AutoOutcome empty = solve_auto(Instance{}, 3);
  CHECK(empty.result.status == SolveStatus::Optimal);
  CHECK(empty.result.objective == Int(0));

  // dense instance with no structure within kmax=1: oracle fallback
  Instance dense;
  for (int v = 0; v < 3; ++v)
    add_variable(dense, "v" + std::to_string(v), Int(0), Int(2), Int(1));
  for (int c = 0; c < 3; ++c)
    add_constraint(dense, "r" + std::to_string(c),
                   {{0, Int(1)}, {1, Int(1)}, {2, Int(c + 1)}}, Int(3 + c));
  AutoOutcome fb = solve_auto(dense, 1);
  CHECK(fb.strategy == "oracle");
  CHECK_FALSE(fb.detection.has_value());
  SolveResult direct = brute_force_oracle(dense);
  CHECK(fb.result.status == direct.status);
  if (direct.status != SolveStatus::Infeasible) CHECK(fb.result.objective == direct.objective);
}

TEST_CASE("structured solvers agree with the oracle on random instances") {
  int optimal = 0, infeasible = 0;
  for (uint64_t seed = 1; seed <= 60; ++seed) {
    RandomFracturedParams p;
    p.seed = seed;
    p.num_components = 2 + int(seed % 3);
    p.component_size = 4;
    p.coeff_bound = 3;
    p.domain_bound = 3;
    p.max_enum_product = 50000;
    GeneratedInstance gen = gen_random_fractured(p);
    CAPTURE(seed);

    SolveResult want = brute_force_oracle(gen.instance);
    (want.status == SolveStatus::Infeasible ? infeasible : optimal)++;

    SolveResult mixed =
        solve_mixed_backdoor(gen.instance, gen.backdoor.vars, gen.backdoor.cons);
    CHECK(mixed.status == want.status);
    AutoOutcome automatic = solve_auto(gen.instance, 6);
    CHECK(automatic.result.status == want.status);
    if (want.status == SolveStatus::Infeasible) continue;

    CHECK(mixed.objective == want.objective);
    CHECK(automatic.result.objective == want.objective);
    CHECK(evaluate(gen.instance, mixed.assignment).feasible);
    CHECK(evaluate(gen.instance, automatic.result.assignment).feasible);
  }
  CHECK(optimal > 0);
  CHECK(infeasible > 0);
}

TEST_CASE("augmentation sanity around returned optima") {
  // for an optimum alpha and any delta with alpha+delta and alpha-delta both
  // feasible, the objective of delta must vanish
  for (uint64_t seed = 1; seed <= 20; ++seed) {
    RandomFracturedParams p;
    p.seed = seed * 13;
    p.num_components = 2;
    p.component_size = 4;
    p.max_enum_product = 20000;
    GeneratedInstance gen = gen_random_fractured(p);
    SolveResult r = brute_force_oracle(gen.instance);
    if (r.status == SolveStatus::Infeasible) continue;

    SplitMix64 rng(seed);
    const size_t n = gen.instance.vars.size();
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<Int> delta(n), plus(n), minus(n);
      Int dobj = 0;
      for (size_t v = 0; v < n; ++v) {
        delta[v] = Int(rng.range(-1, 1));
        plus[v] = r.assignment[v] + delta[v];
        minus[v] = r.assignment[v] - delta[v];
        dobj += gen.instance.vars[v].objective * delta[v];
      }
      EvalResult ep = evaluate(gen.instance, plus);
      EvalResult em = evaluate(gen.instance, minus);
      if (ep.feasible && em.feasible) CHECK(dobj == Int(0));
    }
  }
}
