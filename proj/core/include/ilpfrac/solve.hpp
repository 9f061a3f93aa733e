#pragma once

#include "ilpfrac/backdoor.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ilpfrac {

// how to handle variables with one-sided or absent bounds: enumeration needs
// finite domains, so missing bounds are replaced by +/-cap. with paper_ml the
// cap is the theoretical magnitude bound domain_bound_ml instead, which makes
// the substitution lossless (and astronomically large; real runs use a finite
// cap and get a result labeled OptimalWithinCap).
struct CapPolicy {
  Int cap = 10000;
  bool paper_ml = false;
};

// 8 * (2(p_c+2)^2)! * n^(2(p_c+2)^2)
Int domain_bound_ml(int p_c, const Int& n);
// instance size measure fed into domain_bound_ml: variable and constraint
// counts plus all coefficient/rhs/finite-bound/objective magnitudes
Int instance_size_measure(const Instance& inst);

enum class SolveStatus { Infeasible, Optimal, OptimalWithinCap };

struct SolveResult {
  SolveStatus status = SolveStatus::Infeasible;
  std::vector<Int> assignment;  // empty when infeasible
  Int objective = 0;
  // only meaningful for OptimalWithinCap: the reported optimum sits on an
  // artificial cap, so the true instance may be unbounded (heuristic signal)
  bool cap_hit = false;
};

struct SolveLimits {
  long long enum_nodes = 1000000;  // per enumeration context
  long long dp_keys = 1000000;     // live keys per dp fold
};

// ground truth at desk scale: plain exhaustive enumeration over the full
// domain product. requires finite domains; the product may not exceed limit.
SolveResult brute_force_oracle(const Instance& inst, long long limit = 10000000);

// per-component exhaustive optimization; requires every component <= ell vertices
SolveResult solve_compact(const Instance& inst, int ell, const CapPolicy& policy = {},
                          const SolveLimits& limits = {});

// dp over components keyed by their contribution to the backdoor rows
SolveResult solve_constraint_backdoor(const Instance& inst, const std::vector<int>& zcons,
                                      const CapPolicy& policy = {}, const SolveLimits& limits = {});

// enumerates backdoor-variable assignments, finishing components as soon as
// all their backdoor neighbors are fixed
SolveResult solve_variable_backdoor(const Instance& inst, const std::vector<int>& zvars,
                                    const CapPolicy& policy = {}, const SolveLimits& limits = {});

// mixed backdoor: variable enumeration wrapped around the constraint dp
SolveResult solve_mixed_backdoor(const Instance& inst, const std::vector<int>& zvars,
                                 const std::vector<int>& zcons, const CapPolicy& policy = {},
                                 const SolveLimits& limits = {});

struct AutoOutcome {
  SolveResult result;
  std::string strategy;                    // which solver ran
  std::optional<FractureResult> detection; // backdoor it dispatched on
  std::optional<Mode> mode;
};

// probes all three modes up to k_max, dispatches the structured solver for the
// smallest fracture number found; falls back to the oracle on capped domains
AutoOutcome solve_auto(const Instance& inst, int k_max, const CapPolicy& policy = {},
                       const SolveLimits& limits = {});

}  // namespace ilpfrac
