#include "ilpfrac/backdoor.hpp"

#include <algorithm>
#include <stdexcept>

namespace ilpfrac {

const char* mode_name(Mode m) {
  switch (m) {
    case Mode::Variable: return "variable";
    case Mode::Constraint: return "constraint";
    case Mode::Mixed: return "mixed";
  }
  throw std::invalid_argument("mode_name: bad mode");
}

std::optional<Mode> mode_from_name(std::string_view s) {
  if (s == "variable") return Mode::Variable;
  if (s == "constraint") return Mode::Constraint;
  if (s == "mixed") return Mode::Mixed;
  return std::nullopt;
}

bool verify_backdoor(const Instance& inst, const std::vector<int>& zvars,
                     const std::vector<int>& zcons, int ell, Mode mode) {
  if (ell < 0) return false;
  if (mode == Mode::Variable && !zcons.empty()) return false;
  if (mode == Mode::Constraint && !zvars.empty()) return false;
  std::vector<char> seen_v(inst.vars.size(), 0), seen_c(inst.cons.size(), 0);
  for (int v : zvars) {
    if (v < 0 || v >= int(inst.vars.size()) || seen_v[size_t(v)]) return false;
    seen_v[size_t(v)] = 1;
  }
  for (int c : zcons) {
    if (c < 0 || c >= int(inst.cons.size()) || seen_c[size_t(c)]) return false;
    seen_c[size_t(c)] = 1;
  }
  for (const SubIlp& s : components(inst, zvars, zcons))
    if (s.vertex_count() > ell) return false;
  return true;
}

bool verify_backdoor(const Instance& inst, const Backdoor& bd) {
  return verify_backdoor(inst, bd.vars, bd.cons, bd.ell, bd.mode);
}

namespace {

// Grows a connected subgraph from `start` until it holds `want` vertices or the
// component is exhausted. Depth-first, neighbors in ascending order, so the
// collected set depends only on the graph and the start vertex.
void grow_subgraph(const IncidenceGraph& g, const std::vector<char>& alive, int v, int want,
                   std::vector<char>& mark, std::vector<int>& out) {
  mark[size_t(v)] = 1;
  out.push_back(v);
  if (int(out.size()) >= want) return;
  for (int w : g.adj[size_t(v)]) {
    if (!alive[size_t(w)] || mark[size_t(w)]) continue;
    grow_subgraph(g, alive, w, want, mark, out);
    if (int(out.size()) >= want) return;
  }
}

struct Vdtsc {
  const IncidenceGraph& g;
  const std::vector<char>& deletable;
  int comp_bound;

  std::optional<std::vector<int>> run(std::vector<char>& alive, int budget) {
    auto comps = graph_components(g, alive);
    if (comps.size() == 1) return connected(alive, comps[0], budget);

    // Disconnected: each oversized component is an independent subproblem, so
    // take its minimum hitting set by raising its budget until one appears.
    std::vector<int> total;
    for (const auto& comp : comps) {
      if (int(comp.size()) <= comp_bound) continue;
      int left = budget - int(total.size());
      std::vector<char> sub(alive.size(), 0);
      for (int v : comp) sub[size_t(v)] = 1;
      std::optional<std::vector<int>> found;
      for (int b = 0; b <= left && !found; ++b) found = run(sub, b);
      if (!found) return std::nullopt;
      total.insert(total.end(), found->begin(), found->end());
    }
    std::sort(total.begin(), total.end());
    return total;
  }

  std::optional<std::vector<int>> connected(std::vector<char>& alive, const std::vector<int>& comp,
                                            int budget) {
    if (int(comp.size()) <= comp_bound) return std::vector<int>{};
    if (budget == 0) return std::nullopt;

    // Any valid set must delete a vertex of every connected subgraph larger
    // than the bound, so branching over one such subgraph is exhaustive.
    std::vector<char> mark(alive.size(), 0);
    std::vector<int> witness;
    grow_subgraph(g, alive, comp[0], comp_bound + 1, mark, witness);

    std::vector<int> cands;
    for (int v : witness)
      if (deletable[size_t(v)]) cands.push_back(v);
    std::sort(cands.begin(), cands.end());

    for (int v : cands) {
      alive[size_t(v)] = 0;
      auto rest = run(alive, budget - 1);
      alive[size_t(v)] = 1;
      if (rest) {
        rest->push_back(v);
        std::sort(rest->begin(), rest->end());
        return rest;
      }
    }
    return std::nullopt;
  }
};

}  // namespace

std::optional<std::vector<int>> vdtsc(const IncidenceGraph& g, const std::vector<char>& deletable,
                                      int budget, int comp_bound) {
  if (int(deletable.size()) != g.size())
    throw std::invalid_argument("vdtsc: deletable mask size mismatch");
  if (budget < 0 || comp_bound < 0) throw std::invalid_argument("vdtsc: negative parameter");
  Vdtsc solver{g, deletable, comp_bound};
  std::vector<char> alive(size_t(g.size()), 1);
  // First budget that succeeds yields a minimum-size set.
  for (int b = 0; b <= budget; ++b) {
    std::vector<char> fresh = alive;
    if (auto r = solver.run(fresh, b)) return r;
  }
  return std::nullopt;
}

namespace {

std::vector<char> deletable_mask(const IncidenceGraph& g, Mode mode) {
  std::vector<char> del(size_t(g.size()), 0);
  for (int v = 0; v < g.size(); ++v) {
    bool var_side = g.is_var(v);
    if (mode == Mode::Mixed || (mode == Mode::Variable && var_side) ||
        (mode == Mode::Constraint && !var_side))
      del[size_t(v)] = 1;
  }
  return del;
}

Backdoor split_backdoor(const IncidenceGraph& g, const std::vector<int>& verts, int ell,
                        Mode mode) {
  Backdoor bd;
  bd.ell = ell;
  bd.mode = mode;
  for (int v : verts) {
    if (g.is_var(v))
      bd.vars.push_back(v);
    else
      bd.cons.push_back(v - g.nvars);
  }
  return bd;
}

}  // namespace

std::optional<Backdoor> find_backdoor_exact(const Instance& inst, int k, Mode mode) {
  if (k < 0) throw std::invalid_argument("find_backdoor_exact: negative k");
  IncidenceGraph g = incidence_graph(inst);
  auto verts = vdtsc(g, deletable_mask(g, mode), k, k);
  if (!verts) return std::nullopt;
  return split_backdoor(g, *verts, k, mode);
}

std::optional<Backdoor> find_backdoor_approx(const Instance& inst, int k, Mode mode) {
  if (k < 0) throw std::invalid_argument("find_backdoor_approx: negative k");
  IncidenceGraph g = incidence_graph(inst);
  std::vector<char> deletable = deletable_mask(g, mode);
  std::vector<char> alive(size_t(g.size()), 1);
  std::vector<int> chosen;
  for (;;) {
    auto comps = graph_components(g, alive);
    const std::vector<int>* oversized = nullptr;
    for (const auto& comp : comps) {
      if (int(comp.size()) > k) {
        oversized = &comp;
        break;
      }
    }
    if (!oversized) break;
    std::vector<char> mark(alive.size(), 0);
    std::vector<int> witness;
    grow_subgraph(g, alive, (*oversized)[0], k + 1, mark, witness);
    std::vector<int> hits;
    for (int v : witness)
      if (deletable[size_t(v)]) hits.push_back(v);
    if (hits.empty()) return std::nullopt;
    std::sort(hits.begin(), hits.end());
    for (int v : hits) {
      alive[size_t(v)] = 0;
      chosen.push_back(v);
    }
  }
  std::sort(chosen.begin(), chosen.end());
  return split_backdoor(g, chosen, k, mode);
}

std::optional<FractureResult> fracture_number(const Instance& inst, Mode mode, int k_max) {
  for (int k = 1; k <= k_max; ++k) {
    if (auto bd = find_backdoor_exact(inst, k, mode)) return FractureResult{k, std::move(*bd)};
  }
  return std::nullopt;
}

}  // namespace ilpfrac
