#pragma once

#include "ilpfrac/model.hpp"

#include <vector>

namespace ilpfrac {

// bipartite incidence graph of an instance. vertices 0..nvars-1 are the
// variables, nvars..nvars+ncons-1 the constraints; an edge means a nonzero
// coefficient. adjacency lists are kept sorted so traversals are deterministic.
struct IncidenceGraph {
  int nvars = 0;
  int ncons = 0;
  std::vector<std::vector<int>> adj;

  int size() const { return nvars + ncons; }
  bool is_var(int v) const { return v < nvars; }
  int cons_vertex(int c) const { return nvars + c; }
  long long edge_count() const;
};

IncidenceGraph incidence_graph(const Instance& inst);

// connected components among alive vertices; each component ascending,
// components ordered by their smallest vertex
std::vector<std::vector<int>> graph_components(const IncidenceGraph& g,
                                               const std::vector<char>& alive);

// a component of the instance viewed as index slices into the parent
struct SubIlp {
  std::vector<int> vars;  // ascending
  std::vector<int> cons;  // ascending

  int vertex_count() const { return int(vars.size() + cons.size()); }
  bool operator==(const SubIlp&) const = default;
};

// components of the instance after deleting the given variables/constraints
std::vector<SubIlp> components(const Instance& inst,
                               const std::vector<int>& removed_vars,
                               const std::vector<int>& removed_cons);

}  // namespace ilpfrac
