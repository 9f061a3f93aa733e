#pragma once

#include "ilpfrac/graph.hpp"

#include <optional>
#include <vector>

namespace ilpfrac {

// which side of the incidence graph the backdoor may delete from
enum class Mode { Variable, Constraint, Mixed };

const char* mode_name(Mode m);
std::optional<Mode> mode_from_name(std::string_view s);

struct Backdoor {
  std::vector<int> vars;  // ascending variable indices
  std::vector<int> cons;  // ascending constraint indices
  int ell = 0;            // promised compactness after deletion
  Mode mode = Mode::Mixed;

  int size() const { return int(vars.size() + cons.size()); }
};

// true iff Z respects the mode sides and every component of inst minus Z has
// at most ell vertices
bool verify_backdoor(const Instance& inst, const std::vector<int>& zvars,
                     const std::vector<int>& zcons, int ell, Mode mode);
bool verify_backdoor(const Instance& inst, const Backdoor& bd);

// minimum-size deletion set B (within `deletable`) such that every component
// of g minus B has at most comp_bound vertices and |B| <= budget
std::optional<std::vector<int>> vdtsc(const IncidenceGraph& g,
                                      const std::vector<char>& deletable,
                                      int budget, int comp_bound);

// backdoor of size <= k to k-compactness, exact branching search
std::optional<Backdoor> find_backdoor_exact(const Instance& inst, int k, Mode mode);

// greedy factor-(k+1) approximation: whenever a size-<=k backdoor exists the
// result is a valid backdoor of size <= k(k+1)
std::optional<Backdoor> find_backdoor_approx(const Instance& inst, int k, Mode mode);

struct FractureResult {
  int k = 0;  // the fracture number for the requested mode
  Backdoor bd;
};

// smallest k in 1..k_max admitting a backdoor of size <= k to k-compactness
std::optional<FractureResult> fracture_number(const Instance& inst, Mode mode, int k_max);

}  // namespace ilpfrac
