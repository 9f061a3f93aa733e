#pragma once

#include "ilpfrac/backdoor.hpp"

#include <optional>
#include <vector>

namespace ilpfrac {

// everything that characterizes one component of inst minus Z relative to a
// fixed ordering of Z: the local coefficient matrix q (component rows x
// component vars), the backdoor-variable columns qv inside component rows, the
// component-variable columns qc inside backdoor rows, plus local right-hand
// sides, bounds and objective slice. two components are interchangeable
// exactly when all of it matches under a simultaneous renaming.
struct LocalData {
  SubIlp comp;
  std::vector<std::vector<Int>> q;   // cons x vars
  std::vector<std::vector<Int>> qv;  // cons x zvars
  std::vector<std::vector<Int>> qc;  // zcons x vars
  std::vector<Int> rhs;              // per local constraint
  std::vector<MaybeInt> lo, hi;      // per local variable
  std::vector<Int> obj;              // per local variable
};

LocalData local_data(const Instance& inst, const SubIlp& comp,
                     const std::vector<int>& zvars, const std::vector<int>& zcons);

// witnessing bijection: local var i of a plays the role of var_map[i] in b,
// same for constraints
struct TypeBijection {
  std::vector<int> var_map;
  std::vector<int> cons_map;
};

std::optional<TypeBijection> same_type(const LocalData& a, const LocalData& b);

// deterministic canonical ordering of one component: lexicographically minimal
// (q, qv, qc, rhs, bounds, objective) tuple over column permutations, rows
// sorted per column choice. idempotent, identical for same-type components.
struct CanonicalForm {
  std::vector<int> var_order;   // canonical column i = local var var_order[i]
  std::vector<int> cons_order;  // canonical row i = local constraint cons_order[i]
};

CanonicalForm canonical_form(const LocalData& d);

struct TypeClass {
  std::vector<int> members;  // component indices, ascending; front() is the representative
};

struct TypePartition {
  std::vector<SubIlp> comps;          // components of inst minus Z, canonical order
  std::vector<LocalData> data;        // aligned with comps
  std::vector<TypeClass> classes;     // ordered by first occurrence
  std::vector<int> class_of;          // component index -> class index

  int max_multiplicity() const;
};

TypePartition classify(const Instance& inst, const std::vector<int>& zvars,
                       const std::vector<int>& zcons);

// upper bound (2*c_a + 1)^(2k^2) on the number of distinct type classes
Int type_class_bound(const Int& c_a, int k);

}  // namespace ilpfrac
