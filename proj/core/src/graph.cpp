#include "ilpfrac/graph.hpp"

#include <algorithm>
#include <stdexcept>

namespace ilpfrac {

IncidenceGraph incidence_graph(const Instance& inst) {
  IncidenceGraph g;
  g.nvars = int(inst.vars.size());
  g.ncons = int(inst.cons.size());
  g.adj.assign(size_t(g.nvars + g.ncons), {});
  for (int c = 0; c < g.ncons; ++c) {
    const int cv = g.cons_vertex(c);
    for (const Term& t : inst.cons[c].terms) {
      g.adj[size_t(t.var)].push_back(cv);
      g.adj[size_t(cv)].push_back(t.var);
    }
  }
  for (auto& nbrs : g.adj) std::sort(nbrs.begin(), nbrs.end());
  return g;
}

long long IncidenceGraph::edge_count() const {
  long long twice = 0;
  for (const auto& nbrs : adj) twice += static_cast<long long>(nbrs.size());
  return twice / 2;
}

std::vector<std::vector<int>> graph_components(const IncidenceGraph& g,
                                               const std::vector<char>& alive) {
  if (int(alive.size()) != g.size())
    throw std::invalid_argument("graph_components: alive mask size mismatch");
  std::vector<char> seen(alive.size(), 0);
  std::vector<std::vector<int>> comps;
  std::vector<int> stack;
  for (int start = 0; start < g.size(); ++start) {
    if (!alive[size_t(start)] || seen[size_t(start)]) continue;
    std::vector<int> comp;
    stack.push_back(start);
    seen[size_t(start)] = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      for (int w : g.adj[size_t(v)]) {
        if (!alive[size_t(w)] || seen[size_t(w)]) continue;
        seen[size_t(w)] = 1;
        stack.push_back(w);
      }
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  return comps;
}

std::vector<SubIlp> components(const Instance& inst, const std::vector<int>& removed_vars,
                               const std::vector<int>& removed_cons) {
  IncidenceGraph g = incidence_graph(inst);
  std::vector<char> alive(size_t(g.size()), 1);
  for (int v : removed_vars) {
    if (v < 0 || v >= g.nvars) throw std::invalid_argument("components: bad variable id");
    alive[size_t(v)] = 0;
  }
  for (int c : removed_cons) {
    if (c < 0 || c >= g.ncons) throw std::invalid_argument("components: bad constraint id");
    alive[size_t(g.cons_vertex(c))] = 0;
  }
  std::vector<SubIlp> out;
  for (const auto& comp : graph_components(g, alive)) {
    SubIlp s;
    for (int v : comp) {
      if (g.is_var(v))
        s.vars.push_back(v);
      else
        s.cons.push_back(v - g.nvars);
    }
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace ilpfrac
