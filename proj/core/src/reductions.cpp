#include "ilpfrac/reductions.hpp"

#include "ilpfrac/errors.hpp"

#include "json.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace ilpfrac {

using json = nlohmann::ordered_json;

SimpleGraph parse_graph(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const std::exception& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  if (!root.is_object() || !root.contains("n") || !root["n"].is_number_integer())
    throw ParseError("graph must be an object with an integer 'n'");
  SimpleGraph g;
  long long n = root["n"].get<long long>();
  if (n < 0 || n > 1000000) throw ParseError("graph: 'n' out of range");
  g.n = int(n);

  auto check_vertex = [&](const json& j, const char* what) {
    if (!j.is_number_integer()) throw ParseError(std::string("graph: ") + what + " must be an integer");
    long long v = j.get<long long>();
    if (v < 0 || v >= n) throw ParseError(std::string("graph: ") + what + " out of range");
    return int(v);
  };

  std::set<std::pair<int, int>> seen;
  if (root.contains("edges")) {
    if (!root["edges"].is_array()) throw ParseError("graph: 'edges' must be an array");
    for (const json& je : root["edges"]) {
      if (!je.is_array() || je.size() != 2) throw ParseError("graph: each edge must be a pair");
      int u = check_vertex(je[0], "edge endpoint");
      int v = check_vertex(je[1], "edge endpoint");
      if (u == v) throw ParseError("graph: self-loop");
      if (!seen.emplace(std::min(u, v), std::max(u, v)).second)
        throw ParseError("graph: duplicate edge");
      g.edges.emplace_back(u, v);
    }
  }
  if (root.contains("parts")) {
    if (!root["parts"].is_array()) throw ParseError("graph: 'parts' must be an array");
    std::vector<char> owned(size_t(g.n), 0);
    for (const json& jp : root["parts"]) {
      if (!jp.is_array()) throw ParseError("graph: each part must be an array");
      std::vector<int> part;
      for (const json& jv : jp) {
        int v = check_vertex(jv, "part member");
        if (owned[size_t(v)]) throw ParseError("graph: vertex in two parts");
        owned[size_t(v)] = 1;
        part.push_back(v);
      }
      g.parts.push_back(std::move(part));
    }
  }
  return g;
}

std::string serialize_graph(const SimpleGraph& g) {
  json root = json::object();
  root["n"] = g.n;
  json edges = json::array();
  for (const auto& [u, v] : g.edges) edges.push_back(json::array({u, v}));
  root["edges"] = std::move(edges);
  json parts = json::array();
  for (const auto& part : g.parts) {
    json jp = json::array();
    for (int v : part) jp.push_back(v);
    parts.push_back(std::move(jp));
  }
  root["parts"] = std::move(parts);
  return root.dump(2) + "\n";
}

uint64_t SplitMix64::next() {
  uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

uint64_t SplitMix64::below(uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("SplitMix64::below: zero bound");
  const uint64_t rej = (0 - bound) % bound;  // 2^64 mod bound
  uint64_t r;
  do {
    r = next();
  } while (r < rej);
  return r % bound;
}

long long SplitMix64::range(long long lo, long long hi) {
  if (lo > hi) throw std::invalid_argument("SplitMix64::range: empty range");
  return lo + static_cast<long long>(below(static_cast<uint64_t>(hi - lo) + 1));
}

long long nth_prime(int n) {
  if (n < 1) throw std::invalid_argument("nth_prime: n must be positive");
  size_t limit = 128;
  for (;;) {
    std::vector<char> composite(limit, 0);
    std::vector<long long> primes;
    for (size_t i = 2; i < limit; ++i) {
      if (composite[i]) continue;
      primes.push_back(static_cast<long long>(i));
      for (size_t j = i * i; j < limit; j += i) composite[j] = 1;
    }
    if (int(primes.size()) >= n) return primes[size_t(n - 1)];
    limit *= 2;
  }
}

namespace {

bool is_prime(long long n) {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace

std::vector<long long> sidon_sequence(int n) {
  if (n < 0) throw std::invalid_argument("sidon_sequence: negative n");
  if (n == 0) return {};
  long long p = std::max<long long>(2, n);
  while (!is_prime(p)) ++p;
  std::vector<long long> out;
  for (long long i = 0; i < n; ++i) out.push_back(2 * p * i + (i * i) % p);
  return out;
}

Instance gen_subset_sum(const std::vector<Int>& s, const Int& target) {
  Instance inst;
  std::vector<Term> terms;
  for (size_t i = 0; i < s.size(); ++i) {
    int id = add_variable(inst, "x" + std::to_string(i), Int(0), Int(1), Int(0));
    if (s[i] != 0) terms.push_back(Term{id, s[i]});
  }
  add_constraint(inst, "sum", std::move(terms), target);
  return inst;
}

GeneratedInstance gen_three_coloring(const SimpleGraph& g) {
  Instance inst;
  std::vector<int> color(3);
  for (int j = 1; j <= 3; ++j)
    color[size_t(j - 1)] = add_variable(inst, "c" + std::to_string(j), Int(0), std::nullopt, Int(0));

  // Divisibility gadget shared by vertices and edge endpoints: u = 0 forces
  // p | c_j (remainder pinned to zero), u = 1 forces p to not divide c_j.
  auto gadget = [&](const std::string& tag, long long p, int cj) {
    const Int pm1 = Int(p - 1);
    int r = add_variable(inst, tag + "_r", Int(0), pm1, Int(0));
    int u = add_variable(inst, tag + "_u", Int(0), Int(1), Int(0));
    int sl1 = add_variable(inst, tag + "_sl1", Int(0), std::nullopt, Int(0));
    int sl2 = add_variable(inst, tag + "_sl2", Int(0), std::nullopt, Int(0));
    int m = add_variable(inst, tag + "_m", Int(0), std::nullopt, Int(0));
    add_constraint(inst, tag + "_div", {Term{cj, Int(1)}, Term{m, Int(-p)}, Term{r, Int(-1)}},
                   Int(0));
    add_constraint(inst, tag + "_lo", {Term{u, Int(1)}, Term{sl1, Int(1)}, Term{r, Int(-1)}},
                   Int(0));
    add_constraint(inst, tag + "_hi", {Term{r, Int(1)}, Term{sl2, Int(1)}, Term{u, -pm1}}, Int(0));
    return u;
  };

  for (int i = 0; i < g.n; ++i) {
    const long long p = nth_prime(i + 1);
    std::vector<Term> ones;
    for (int j = 1; j <= 3; ++j) {
      int u = gadget("v" + std::to_string(i) + "_c" + std::to_string(j), p,
                     color[size_t(j - 1)]);
      ones.push_back(Term{u, Int(1)});
    }
    add_constraint(inst, "v" + std::to_string(i) + "_one", std::move(ones), Int(2));
  }
  for (size_t e = 0; e < g.edges.size(); ++e) {
    const auto& [a, b] = g.edges[e];
    for (int j = 1; j <= 3; ++j) {
      const std::string tag = "e" + std::to_string(e);
      int ua = gadget(tag + "_v" + std::to_string(a) + "_c" + std::to_string(j),
                      nth_prime(a + 1), color[size_t(j - 1)]);
      int ub = gadget(tag + "_v" + std::to_string(b) + "_c" + std::to_string(j),
                      nth_prime(b + 1), color[size_t(j - 1)]);
      int sl5 = add_variable(inst, tag + "_c" + std::to_string(j) + "_sl5", Int(0), std::nullopt,
                             Int(0));
      add_constraint(inst, tag + "_c" + std::to_string(j) + "_edge",
                     {Term{ua, Int(1)}, Term{ub, Int(1)}, Term{sl5, Int(-1)}}, Int(1));
    }
  }

  GeneratedInstance out;
  out.instance = std::move(inst);
  out.backdoor.vars = color;
  out.backdoor.ell = 25;
  out.backdoor.mode = Mode::Variable;
  return out;
}

GeneratedInstance gen_multicolored_clique(const SimpleGraph& g) {
  if (g.parts.empty()) throw std::invalid_argument("gen_multicolored_clique: graph has no parts");
  std::vector<int> part_of(size_t(g.n), -1);
  for (size_t i = 0; i < g.parts.size(); ++i)
    for (int v : g.parts[i]) part_of[size_t(v)] = int(i);
  for (int v = 0; v < g.n; ++v)
    if (part_of[size_t(v)] < 0)
      throw std::invalid_argument("gen_multicolored_clique: vertex outside all parts");

  const int k = int(g.parts.size());
  const std::vector<long long> weight = sidon_sequence(g.n);

  Instance inst;
  std::vector<int> xvar(size_t(g.n), -1);
  std::vector<int> wvar(size_t(k), -1);
  for (int i = 0; i < k; ++i) {
    std::vector<int> verts = g.parts[size_t(i)];
    std::sort(verts.begin(), verts.end());
    for (int v : verts)
      xvar[size_t(v)] = add_variable(inst, "x_" + std::to_string(v), Int(0), Int(1), Int(0));
    wvar[size_t(i)] =
        add_variable(inst, "w_" + std::to_string(i), std::nullopt, std::nullopt, Int(0));
  }

  // cross edges per part pair, ascending
  std::map<std::pair<int, int>, std::vector<std::pair<int, int>>> cross;
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) cross[{i, j}];
  for (auto [u, v] : g.edges) {
    int pu = part_of[size_t(u)], pv = part_of[size_t(v)];
    if (pu == pv) continue;  // irrelevant to a one-per-part clique
    if (pu > pv) {
      std::swap(pu, pv);
      std::swap(u, v);
    }
    if (u > v) std::swap(u, v);
    cross[{pu, pv}].emplace_back(u, v);
  }

  std::map<std::pair<int, int>, int> zvar;
  std::map<std::pair<int, int>, std::vector<int>> yvars;
  for (auto& [pair, list] : cross) {
    std::sort(list.begin(), list.end());
    for (const auto& [u, v] : list)
      yvars[pair].push_back(add_variable(inst, "y_" + std::to_string(u) + "_" + std::to_string(v),
                                         Int(0), Int(1), Int(0)));
    zvar[pair] = add_variable(
        inst, "z_" + std::to_string(pair.first) + "_" + std::to_string(pair.second), std::nullopt,
        std::nullopt, Int(0));
  }

  std::vector<int> rows;
  for (int i = 0; i < k; ++i) {
    std::vector<int> verts = g.parts[size_t(i)];
    std::sort(verts.begin(), verts.end());
    std::vector<Term> sel, ass;
    for (int v : verts) {
      sel.push_back(Term{xvar[size_t(v)], Int(1)});
      ass.push_back(Term{xvar[size_t(v)], weight[size_t(v)]});
    }
    ass.push_back(Term{wvar[size_t(i)], Int(-1)});
    rows.push_back(add_constraint(inst, "vsel_" + std::to_string(i), std::move(sel), Int(1)));
    rows.push_back(add_constraint(inst, "vass_" + std::to_string(i), std::move(ass), Int(0)));
  }
  for (auto& [pair, list] : cross) {
    const std::string sfx = std::to_string(pair.first) + "_" + std::to_string(pair.second);
    std::vector<Term> sel, ass;
    for (size_t e = 0; e < list.size(); ++e) {
      sel.push_back(Term{yvars[pair][e], Int(1)});
      ass.push_back(Term{yvars[pair][e], weight[size_t(list[e].first)] +
                                             weight[size_t(list[e].second)]});
    }
    ass.push_back(Term{zvar[pair], Int(-1)});
    rows.push_back(add_constraint(inst, "esel_" + sfx, std::move(sel), Int(1)));
    rows.push_back(add_constraint(inst, "eass_" + sfx, std::move(ass), Int(0)));
    rows.push_back(add_constraint(
        inst, "vecheck_" + sfx,
        {Term{wvar[size_t(pair.first)], Int(1)}, Term{wvar[size_t(pair.second)], Int(1)},
         Term{zvar[pair], Int(-1)}},
        Int(0)));
  }

  GeneratedInstance out;
  out.instance = std::move(inst);
  std::sort(rows.begin(), rows.end());
  out.backdoor.cons = std::move(rows);
  out.backdoor.ell = 3;
  out.backdoor.mode = Mode::Constraint;
  return out;
}

GeneratedInstance gen_random_fractured(const RandomFracturedParams& params) {
  if (params.num_components < 1 || params.component_size < 1 || params.num_global_vars < 0 ||
      params.num_global_cons < 0 || params.coeff_bound < 1 || params.domain_bound < 0 ||
      params.max_enum_product < 1)
    throw std::invalid_argument("gen_random_fractured: bad parameters");

  SplitMix64 rng(params.seed);
  Instance inst;

  Int space = 1;
  auto fresh_domain = [&]() {
    long long w = rng.range(0, 2 * params.domain_bound);
    while (w > 0 && space * (w + 1) > params.max_enum_product) w /= 2;
    if (space * (w + 1) > params.max_enum_product) w = 0;
    long long lo = rng.range(-params.domain_bound, params.domain_bound - w);
    space *= w + 1;
    return std::pair<Int, Int>(Int(lo), Int(lo + w));
  };
  auto coeff = [&]() {
    long long c = rng.range(1, params.coeff_bound);
    return rng.below(2) ? Int(c) : Int(-c);
  };

  std::vector<int> gvars;
  for (int i = 0; i < params.num_global_vars; ++i) {
    auto [lo, hi] = fresh_domain();
    gvars.push_back(add_variable(inst, "g" + std::to_string(i), lo, hi,
                                 Int(rng.range(-3, 3))));
  }

  std::vector<std::vector<int>> comp_vars(size_t(params.num_components));
  struct PlannedRow {
    std::string name;
    std::vector<Term> terms;
  };
  std::vector<PlannedRow> planned;

  for (int c = 0; c < params.num_components; ++c) {
    const int total = 1 + int(rng.below(uint64_t(params.component_size)));
    const int nv = 1 + int(rng.below(uint64_t(total)));
    const int nc = total - nv;
    for (int i = 0; i < nv; ++i) {
      auto [lo, hi] = fresh_domain();
      comp_vars[size_t(c)].push_back(add_variable(
          inst, "c" + std::to_string(c) + "_x" + std::to_string(i), lo, hi,
          Int(rng.range(-3, 3))));
    }
    for (int i = 0; i < nc; ++i) {
      PlannedRow row;
      row.name = "c" + std::to_string(c) + "_r" + std::to_string(i);
      std::set<int> chosen;
      chosen.insert(comp_vars[size_t(c)][size_t(i % nv)]);
      if (nv > 1) chosen.insert(comp_vars[size_t(c)][size_t((i + 1) % nv)]);
      for (int v : comp_vars[size_t(c)])
        if (!chosen.count(v) && rng.below(4) == 0) chosen.insert(v);
      for (int v : chosen) row.terms.push_back(Term{v, coeff()});
      for (int gv : gvars)
        if (rng.below(2) == 0) row.terms.push_back(Term{gv, coeff()});
      planned.push_back(std::move(row));
    }
  }
  for (int i = 0; i < params.num_global_cons; ++i) {
    PlannedRow row;
    row.name = "gr" + std::to_string(i);
    for (int c = 0; c < params.num_components; ++c) {
      if (rng.below(4) != 0) {
        int pick = int(rng.below(uint64_t(comp_vars[size_t(c)].size())));
        row.terms.push_back(Term{comp_vars[size_t(c)][size_t(pick)], coeff()});
      }
    }
    for (int gv : gvars)
      if (rng.below(2) == 0) row.terms.push_back(Term{gv, coeff()});
    planned.push_back(std::move(row));
  }

  // aim most rows at a reference point so feasible cases are common
  std::vector<Int> ref;
  for (const Variable& v : inst.vars)
    ref.push_back(*v.lower + Int(rng.range(0, (*v.upper - *v.lower).convert_to<long long>())));
  std::vector<int> planted_rows;
  for (PlannedRow& row : planned) {
    Int rhs = 0;
    for (const Term& t : row.terms) rhs += t.coeff * ref[size_t(t.var)];
    if (rng.below(8) == 0) rhs += Int(rng.range(1, 3));
    int id = add_constraint(inst, row.name, std::move(row.terms), rhs);
    if (row.name[0] == 'g') planted_rows.push_back(id);
  }

  GeneratedInstance out;
  out.instance = std::move(inst);
  out.backdoor.vars = gvars;
  out.backdoor.cons = std::move(planted_rows);
  out.backdoor.ell = params.component_size;
  if (!out.backdoor.vars.empty() && !out.backdoor.cons.empty())
    out.backdoor.mode = Mode::Mixed;
  else if (!out.backdoor.vars.empty())
    out.backdoor.mode = Mode::Variable;
  else if (!out.backdoor.cons.empty())
    out.backdoor.mode = Mode::Constraint;
  else
    out.backdoor.mode = Mode::Mixed;
  return out;
}

}  // namespace ilpfrac
