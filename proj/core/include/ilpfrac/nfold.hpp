#pragma once

#include "ilpfrac/comptypes.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ilpfrac {

// component extension: every variable of the component gets an auxiliary copy
// with the same coefficients inside the component's own rows and zeros
// everywhere else (in particular in backdoor rows and the objective).
// first kind: copies are fixed to [0,0], originals keep their bounds.
// second kind: originals are fixed to [0,0], copies take the original bounds.
enum class ExtensionKind { First, Second };

Instance extend_component(const Instance& inst, const SubIlp& comp, ExtensionKind kind);

struct PaddedInstance {
  Instance instance;
  // classes with the same membership semantics as TypePartition, but over the
  // padded instance's components; every class has exactly max_multiplicity
  // members (matrix-identical; first/second kind members differ in bounds only)
  std::vector<SubIlp> comps;
  std::vector<TypeClass> classes;
  // aligned with comps: did this component get the variable-copy extension
  // (originals of a padded class first kind, clones second kind)
  std::vector<char> extended;
  // per variable of instance: index of the original variable it descends from,
  // or nullopt for auxiliary copies and padding clones
  std::vector<std::optional<int>> origin;
};

// brings every type class to the maximum multiplicity N: deficient classes get
// their originals extended (first kind) and N - multiplicity fresh clones of
// the representative (second kind). classes already at N are left untouched.
PaddedInstance pad_to_uniform(const Instance& inst, const TypePartition& part,
                              const std::vector<int>& zvars, const std::vector<int>& zcons);

// 4-block N-fold shape: row 0..r-1 carry [a1 | a2 | a2 | ... | a2], then N
// bricks of u rows [a3 | 0 .. a4 .. 0]. stacked is the padded instance with
// variables/constraints permuted into that layout.
struct FourBlock {
  Instance stacked;
  int r = 0, s = 0, t = 0, u = 0, n = 0;
  std::vector<std::vector<Int>> a1, a2, a3, a4;
  std::vector<std::optional<std::string>> origin;  // per stacked variable
  std::vector<std::string> original_vars;          // names, original order
};

FourBlock to_four_block(const Instance& inst, const Backdoor& bd);

// pulls a feasible assignment of fb.stacked back to the original instance;
// objective and feasibility carry over
std::vector<Int> lift_solution(const FourBlock& fb, const std::vector<Int>& stacked_x);

// reassembles the full matrix a 4-block N-fold product would have; used to
// check the stacked instance entry-for-entry
std::vector<std::vector<Int>> four_block_pattern(const FourBlock& fb);

}  // namespace ilpfrac
