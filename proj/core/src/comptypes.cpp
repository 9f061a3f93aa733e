#include "ilpfrac/comptypes.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <tuple>

namespace ilpfrac {

namespace {

std::vector<int> sorted_copy(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  return v;
}

// Everything a column carries that a matching bijection must preserve:
// bounds, objective, the column through the backdoor rows, and the multiset
// of its local coefficients.
using ColKey = std::tuple<MaybeInt, MaybeInt, Int, std::vector<Int>, std::vector<Int>>;

ColKey column_key(const LocalData& d, int j) {
  std::vector<Int> qc_col;
  for (const auto& row : d.qc) qc_col.push_back(row[size_t(j)]);
  std::vector<Int> q_col;
  for (const auto& row : d.q) q_col.push_back(row[size_t(j)]);
  std::sort(q_col.begin(), q_col.end());
  return {d.lo[size_t(j)], d.hi[size_t(j)], d.obj[size_t(j)], std::move(qc_col), std::move(q_col)};
}

// Permutation-invariant part of a row: backdoor-variable coefficients, right
// hand side, and the multiset of local coefficients.
using RowKey = std::tuple<std::vector<Int>, Int, std::vector<Int>>;

RowKey row_key_invariant(const LocalData& d, int f) {
  std::vector<Int> q_row = d.q[size_t(f)];
  std::sort(q_row.begin(), q_row.end());
  return {d.qv[size_t(f)], d.rhs[size_t(f)], std::move(q_row)};
}

// Row of `a` rewritten in `b`'s column order under var_map, for exact matching.
using RowVec = std::tuple<std::vector<Int>, std::vector<Int>, Int>;

RowVec mapped_row(const LocalData& a, int f, const std::vector<int>& var_map) {
  std::vector<Int> q(a.q[size_t(f)].size());
  for (size_t j = 0; j < q.size(); ++j) q[size_t(var_map[j])] = a.q[size_t(f)][j];
  return {std::move(q), a.qv[size_t(f)], a.rhs[size_t(f)]};
}

RowVec plain_row(const LocalData& b, int g) {
  return {b.q[size_t(g)], b.qv[size_t(g)], b.rhs[size_t(g)]};
}

std::optional<std::vector<int>> match_rows(const LocalData& a, const LocalData& b,
                                           const std::vector<int>& var_map) {
  const int n = int(a.q.size());
  std::vector<std::pair<RowVec, int>> ra, rb;
  for (int f = 0; f < n; ++f) ra.emplace_back(mapped_row(a, f, var_map), f);
  for (int g = 0; g < n; ++g) rb.emplace_back(plain_row(b, g), g);
  auto by_key = [](const auto& x, const auto& y) {
    return x.first != y.first ? x.first < y.first : x.second < y.second;
  };
  std::sort(ra.begin(), ra.end(), by_key);
  std::sort(rb.begin(), rb.end(), by_key);
  std::vector<int> cons_map(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    if (ra[size_t(i)].first != rb[size_t(i)].first) return std::nullopt;
    cons_map[size_t(ra[size_t(i)].second)] = rb[size_t(i)].second;
  }
  return cons_map;
}

bool assign_columns(const LocalData& a, const LocalData& b, const std::vector<ColKey>& keys_a,
                    std::map<ColKey, std::vector<int>>& pool, std::vector<char>& used,
                    std::vector<int>& var_map, size_t j, std::optional<std::vector<int>>& rows_out) {
  if (j == keys_a.size()) {
    rows_out = match_rows(a, b, var_map);
    return rows_out.has_value();
  }
  auto it = pool.find(keys_a[j]);
  if (it == pool.end()) return false;
  for (int cand : it->second) {
    if (used[size_t(cand)]) continue;
    used[size_t(cand)] = 1;
    var_map[j] = cand;
    if (assign_columns(a, b, keys_a, pool, used, var_map, j + 1, rows_out)) return true;
    used[size_t(cand)] = 0;
  }
  return false;
}

}  // namespace

LocalData local_data(const Instance& inst, const SubIlp& comp, const std::vector<int>& zvars,
                     const std::vector<int>& zcons) {
  LocalData d;
  d.comp = comp;
  std::sort(d.comp.vars.begin(), d.comp.vars.end());
  std::sort(d.comp.cons.begin(), d.comp.cons.end());
  const std::vector<int> zv = sorted_copy(zvars);
  const std::vector<int> zc = sorted_copy(zcons);

  const size_t nv = d.comp.vars.size();
  std::vector<int> local_of(inst.vars.size(), -1);
  for (size_t j = 0; j < nv; ++j) local_of[size_t(d.comp.vars[j])] = int(j);
  std::vector<int> zpos(inst.vars.size(), -1);
  for (size_t j = 0; j < zv.size(); ++j) zpos[size_t(zv[j])] = int(j);

  for (int c : d.comp.cons) {
    std::vector<Int> qrow(nv, Int(0)), qvrow(zv.size(), Int(0));
    for (const Term& t : inst.cons[size_t(c)].terms) {
      if (local_of[size_t(t.var)] >= 0)
        qrow[size_t(local_of[size_t(t.var)])] = t.coeff;
      else if (zpos[size_t(t.var)] >= 0)
        qvrow[size_t(zpos[size_t(t.var)])] = t.coeff;
      else
        throw std::invalid_argument("local_data: row touches a foreign variable");
    }
    d.q.push_back(std::move(qrow));
    d.qv.push_back(std::move(qvrow));
    d.rhs.push_back(inst.cons[size_t(c)].rhs);
  }
  for (int c : zc) {
    std::vector<Int> qcrow(nv, Int(0));
    for (const Term& t : inst.cons[size_t(c)].terms)
      if (local_of[size_t(t.var)] >= 0) qcrow[size_t(local_of[size_t(t.var)])] = t.coeff;
    d.qc.push_back(std::move(qcrow));
  }
  for (int v : d.comp.vars) {
    d.lo.push_back(inst.vars[size_t(v)].lower);
    d.hi.push_back(inst.vars[size_t(v)].upper);
    d.obj.push_back(inst.vars[size_t(v)].objective);
  }
  return d;
}

std::optional<TypeBijection> same_type(const LocalData& a, const LocalData& b) {
  if (a.comp.vars.size() != b.comp.vars.size() || a.comp.cons.size() != b.comp.cons.size())
    return std::nullopt;
  if (a.qv.size() != b.qv.size() || a.qc.size() != b.qc.size()) return std::nullopt;
  if (!a.qv.empty() && !b.qv.empty() && a.qv[0].size() != b.qv[0].size()) return std::nullopt;

  const size_t m = a.comp.vars.size();
  std::vector<ColKey> keys_a;
  for (size_t j = 0; j < m; ++j) keys_a.push_back(column_key(a, int(j)));
  std::map<ColKey, std::vector<int>> pool;
  for (size_t j = 0; j < m; ++j) pool[column_key(b, int(j))].push_back(int(j));
  {
    std::map<ColKey, int> count_a;
    for (const ColKey& k : keys_a) ++count_a[k];
    for (const auto& [k, cnt] : count_a) {
      auto it = pool.find(k);
      if (it == pool.end() || int(it->second.size()) != cnt) return std::nullopt;
    }
    if (count_a.size() != pool.size()) return std::nullopt;
  }
  {
    std::vector<RowKey> rka, rkb;
    for (size_t f = 0; f < a.q.size(); ++f) rka.push_back(row_key_invariant(a, int(f)));
    for (size_t g = 0; g < b.q.size(); ++g) rkb.push_back(row_key_invariant(b, int(g)));
    std::sort(rka.begin(), rka.end());
    std::sort(rkb.begin(), rkb.end());
    if (rka != rkb) return std::nullopt;
  }

  std::vector<char> used(m, 0);
  std::vector<int> var_map(m, -1);
  std::optional<std::vector<int>> cons_map;
  if (!assign_columns(a, b, keys_a, pool, used, var_map, 0, cons_map)) return std::nullopt;
  return TypeBijection{std::move(var_map), std::move(*cons_map)};
}

CanonicalForm canonical_form(const LocalData& d) {
  const size_t m = d.comp.vars.size();
  const size_t n = d.comp.cons.size();

  // Columns with equal keys are interchangeable candidates; columns that are
  // bytewise identical need no mutual ordering at all. Group accordingly and
  // enumerate only the distinct arrangements.
  std::vector<std::pair<ColKey, int>> keyed;
  for (size_t j = 0; j < m; ++j) keyed.emplace_back(column_key(d, int(j)), int(j));
  std::stable_sort(keyed.begin(), keyed.end(),
                   [](const auto& x, const auto& y) { return x.first < y.first; });

  struct Group {
    std::vector<std::vector<int>> arrangements;  // concrete column index sequences
    size_t pick = 0;
  };
  std::vector<Group> groups;
  size_t i = 0;
  while (i < m) {
    size_t j = i;
    while (j < m && keyed[j].first == keyed[i].first) ++j;
    std::vector<int> members;
    for (size_t t = i; t < j; ++t) members.push_back(keyed[t].second);

    auto full_col = [&](int col) {
      std::vector<Int> v;
      for (size_t f = 0; f < n; ++f) v.push_back(d.q[f][size_t(col)]);
      for (const auto& row : d.qc) v.push_back(row[size_t(col)]);
      return v;
    };
    std::map<std::vector<Int>, int> class_id;
    std::map<int, std::vector<int>> class_members;
    std::vector<int> ids;
    for (int col : members) {
      auto [it, fresh] = class_id.emplace(full_col(col), int(class_id.size()));
      ids.push_back(it->second);
      class_members[it->second].push_back(col);
    }
    std::sort(ids.begin(), ids.end());

    Group g;
    do {
      std::map<int, size_t> taken;
      std::vector<int> seq;
      for (int id : ids) seq.push_back(class_members[id][taken[id]++]);
      g.arrangements.push_back(std::move(seq));
    } while (std::next_permutation(ids.begin(), ids.end()));
    groups.push_back(std::move(g));
    i = j;
  }

  auto evaluate = [&](const std::vector<int>& order) {
    std::vector<std::pair<std::vector<Int>, int>> rows;
    for (size_t f = 0; f < n; ++f) {
      std::vector<Int> row;
      for (int col : order) row.push_back(d.q[f][size_t(col)]);
      row.insert(row.end(), d.qv[f].begin(), d.qv[f].end());
      row.push_back(d.rhs[f]);
      rows.emplace_back(std::move(row), int(f));
    }
    std::stable_sort(rows.begin(), rows.end(),
                     [](const auto& x, const auto& y) { return x.first < y.first; });
    return rows;
  };

  CanonicalForm best;
  std::vector<std::pair<std::vector<Int>, int>> best_rows;
  bool have = false;
  for (;;) {
    std::vector<int> order;
    for (const Group& g : groups) {
      const auto& seq = g.arrangements[g.pick];
      order.insert(order.end(), seq.begin(), seq.end());
    }
    auto rows = evaluate(order);
    bool better = !have;
    if (have) {
      for (size_t f = 0; f < rows.size(); ++f) {
        if (rows[f].first != best_rows[f].first) {
          better = rows[f].first < best_rows[f].first;
          break;
        }
      }
    }
    if (better) {
      best.var_order = order;
      best_rows = rows;
      have = true;
    }
    // odometer over the group arrangements
    size_t g = 0;
    while (g < groups.size()) {
      if (++groups[g].pick < groups[g].arrangements.size()) break;
      groups[g].pick = 0;
      ++g;
    }
    if (g == groups.size()) break;
  }
  for (const auto& [row, idx] : best_rows) best.cons_order.push_back(idx);
  return best;
}

TypePartition classify(const Instance& inst, const std::vector<int>& zvars,
                       const std::vector<int>& zcons) {
  TypePartition part;
  part.comps = components(inst, zvars, zcons);
  for (const SubIlp& c : part.comps) part.data.push_back(local_data(inst, c, zvars, zcons));
  part.class_of.assign(part.comps.size(), -1);
  for (size_t i = 0; i < part.comps.size(); ++i) {
    for (size_t t = 0; t < part.classes.size(); ++t) {
      int rep = part.classes[t].members.front();
      if (same_type(part.data[i], part.data[size_t(rep)])) {
        part.classes[t].members.push_back(int(i));
        part.class_of[i] = int(t);
        break;
      }
    }
    if (part.class_of[i] < 0) {
      part.classes.push_back(TypeClass{{int(i)}});
      part.class_of[i] = int(part.classes.size()) - 1;
    }
  }
  return part;
}

int TypePartition::max_multiplicity() const {
  int best = 0;
  for (const TypeClass& c : classes) best = std::max(best, int(c.members.size()));
  return best;
}

Int type_class_bound(const Int& c_a, int k) {
  if (k < 0) throw std::invalid_argument("type_class_bound: negative k");
  const unsigned e = 2u * unsigned(k) * unsigned(k);
  return boost::multiprecision::pow(Int(2) * c_a + 1, e);
}

}  // namespace ilpfrac
