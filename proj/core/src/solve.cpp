#include "ilpfrac/solve.hpp"

#include "ilpfrac/errors.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <unordered_map>

namespace ilpfrac {

Int domain_bound_ml(int p_c, const Int& n) {
  if (p_c < 0) throw std::invalid_argument("domain_bound_ml: negative parameter");
  if (p_c > 100) throw std::invalid_argument("domain_bound_ml: parameter out of range");
  if (n < 1) throw std::invalid_argument("domain_bound_ml: size measure must be positive");
  const unsigned e = 2u * unsigned(p_c + 2) * unsigned(p_c + 2);
  Int fact = 1;
  for (unsigned i = 2; i <= e; ++i) fact *= i;
  return Int(8) * fact * boost::multiprecision::pow(n, e);
}

Int instance_size_measure(const Instance& inst) {
  Int m = Int(inst.vars.size()) + Int(inst.cons.size());
  for (const Variable& v : inst.vars) {
    if (v.lower) m += abs_int(*v.lower);
    if (v.upper) m += abs_int(*v.upper);
    m += abs_int(v.objective);
  }
  for (const Constraint& c : inst.cons) {
    m += abs_int(c.rhs);
    for (const Term& t : c.terms) m += abs_int(t.coeff);
  }
  return m;
}

namespace {

struct CappedInstance {
  Instance inst;
  std::vector<char> lo_sub, hi_sub;
  bool any = false;
  Int cap = 0;
};

CappedInstance apply_caps(const Instance& inst, const Int& cap) {
  if (cap < 0) throw std::invalid_argument("cap must be nonnegative");
  CappedInstance ci;
  ci.inst = inst;
  ci.lo_sub.assign(inst.vars.size(), 0);
  ci.hi_sub.assign(inst.vars.size(), 0);
  ci.cap = cap;
  for (size_t i = 0; i < ci.inst.vars.size(); ++i) {
    Variable& v = ci.inst.vars[i];
    if (!v.lower) {
      v.lower = -cap;
      ci.lo_sub[i] = 1;
      ci.any = true;
    }
    if (!v.upper) {
      v.upper = cap;
      ci.hi_sub[i] = 1;
      ci.any = true;
    }
  }
  return ci;
}

bool has_open_domain(const Instance& inst) {
  for (const Variable& v : inst.vars)
    if (!v.lower || !v.upper) return true;
  return false;
}

bool touches_cap(const CappedInstance& ci, const std::vector<Int>& x) {
  for (size_t i = 0; i < x.size(); ++i) {
    if (ci.lo_sub[i] && x[i] == -ci.cap) return true;
    if (ci.hi_sub[i] && x[i] == ci.cap) return true;
  }
  return false;
}

void finish_status(const CappedInstance& ci, const CapPolicy& policy, SolveResult& res) {
  if (res.status == SolveStatus::Infeasible) return;
  if (ci.any) {
    res.cap_hit = touches_cap(ci, res.assignment);
    if (!policy.paper_ml) res.status = SolveStatus::OptimalWithinCap;
  }
}

// Depth-first enumeration of one component with exact-division forcing: when
// a variable is the last unassigned one in some row, that row dictates its
// value, so the domain scan collapses to a single candidate.
struct CompEnum {
  std::vector<int> vars;  // global ids, ascending
  std::vector<Int> lo, hi, obj;
  std::vector<std::vector<std::pair<int, Int>>> var_rows;   // local var -> (row, coeff)
  std::vector<std::vector<std::pair<int, Int>>> var_zrows;  // local var -> (tracked pos, coeff)
  std::vector<Int> target;
  std::vector<int> row_size;
  size_t ntracked = 0;
  bool dead = false;
};

CompEnum build_comp(const Instance& inst, const SubIlp& comp,
                    const std::vector<std::optional<Int>>& fixed,
                    const std::vector<int>& tracked_rows) {
  CompEnum ce;
  ce.vars = comp.vars;
  std::sort(ce.vars.begin(), ce.vars.end());
  std::vector<int> rows = comp.cons;
  std::sort(rows.begin(), rows.end());

  std::unordered_map<int, int> local;
  for (size_t j = 0; j < ce.vars.size(); ++j) local.emplace(ce.vars[j], int(j));
  ce.var_rows.resize(ce.vars.size());
  ce.var_zrows.resize(ce.vars.size());

  for (size_t ri = 0; ri < rows.size(); ++ri) {
    const Constraint& c = inst.cons[size_t(rows[ri])];
    Int tgt = c.rhs;
    int nloc = 0;
    for (const Term& t : c.terms) {
      auto it = local.find(t.var);
      if (it != local.end()) {
        ce.var_rows[size_t(it->second)].emplace_back(int(ri), t.coeff);
        ++nloc;
      } else if (fixed[size_t(t.var)]) {
        tgt -= t.coeff * *fixed[size_t(t.var)];
      } else {
        throw std::logic_error("build_comp: row touches an unassigned foreign variable");
      }
    }
    ce.target.push_back(std::move(tgt));
    ce.row_size.push_back(nloc);
    if (nloc == 0 && ce.target.back() != 0) ce.dead = true;
  }

  ce.ntracked = tracked_rows.size();
  for (size_t zi = 0; zi < tracked_rows.size(); ++zi) {
    for (const Term& t : inst.cons[size_t(tracked_rows[zi])].terms) {
      auto it = local.find(t.var);
      if (it != local.end()) ce.var_zrows[size_t(it->second)].emplace_back(int(zi), t.coeff);
    }
  }

  for (int v : ce.vars) {
    const Variable& var = inst.vars[size_t(v)];
    if (!var.lower || !var.upper)
      throw std::logic_error("build_comp: expected finite (capped) bounds");
    ce.lo.push_back(*var.lower);
    ce.hi.push_back(*var.upper);
    ce.obj.push_back(var.objective);
    if (*var.lower > *var.upper) ce.dead = true;
  }
  return ce;
}

// leaf(values, objective, tracked_contribution)
template <typename F>
void enumerate_comp(const CompEnum& ce, long long limit, F&& leaf) {
  if (ce.dead) return;
  const size_t n = ce.vars.size();
  std::vector<Int> partial(ce.target.size(), Int(0));
  std::vector<int> remaining = ce.row_size;
  std::vector<Int> zpart(ce.ntracked, Int(0));
  std::vector<Int> values(n, Int(0));
  Int objpart = 0;
  long long nodes = 0;

  struct Walker {
    const CompEnum& ce;
    std::vector<Int>& partial;
    std::vector<int>& remaining;
    std::vector<Int>& zpart;
    std::vector<Int>& values;
    Int& objpart;
    long long& nodes;
    long long limit;
    F& leaf;

    void place(size_t d, const Int& v) {
      if (++nodes > limit) throw LimitError("component enumeration limit exceeded");
      for (const auto& [ri, a] : ce.var_rows[d]) {
        partial[size_t(ri)] += a * v;
        --remaining[size_t(ri)];
      }
      for (const auto& [zi, a] : ce.var_zrows[d]) zpart[size_t(zi)] += a * v;
      values[d] = v;
      objpart += ce.obj[d] * v;
      walk(d + 1);
      objpart -= ce.obj[d] * v;
      for (const auto& [zi, a] : ce.var_zrows[d]) zpart[size_t(zi)] -= a * v;
      for (const auto& [ri, a] : ce.var_rows[d]) {
        partial[size_t(ri)] -= a * v;
        ++remaining[size_t(ri)];
      }
    }

    void walk(size_t d) {
      if (d == values.size()) {
        leaf(values, objpart, zpart);
        return;
      }
      bool forced = false;
      Int fval = 0;
      for (const auto& [ri, a] : ce.var_rows[d]) {
        if (remaining[size_t(ri)] != 1) continue;
        Int q, rem;
        boost::multiprecision::divide_qr(ce.target[size_t(ri)] - partial[size_t(ri)], a, q, rem);
        if (rem != 0) return;
        if (forced && fval != q) return;
        forced = true;
        fval = std::move(q);
      }
      if (forced) {
        if (ce.lo[d] <= fval && fval <= ce.hi[d]) place(d, fval);
        return;
      }
      for (Int v = ce.lo[d]; v <= ce.hi[d]; ++v) place(d, v);
    }
  };
  Walker w{ce, partial, remaining, zpart, values, objpart, nodes, limit, leaf};
  w.walk(0);
}

struct ScalarBest {
  bool feasible = false;
  Int obj = 0;
  std::vector<Int> values;
};

struct Option {
  std::vector<Int> values;
  Int obj;
  std::vector<Int> zadd;
};

struct DpEntry {
  Int obj = 0;
  std::vector<Int> values;
};

std::vector<int> sorted_unique(std::vector<int> v, const char* what, int limit) {
  std::sort(v.begin(), v.end());
  if (std::adjacent_find(v.begin(), v.end()) != v.end())
    throw std::invalid_argument(std::string(what) + ": duplicate id");
  if (!v.empty() && (v.front() < 0 || v.back() >= limit))
    throw std::invalid_argument(std::string(what) + ": id out of range");
  return v;
}

SolveResult engine(const Instance& raw, const std::vector<int>& zvars_in,
                   const std::vector<int>& zcons_in, const CapPolicy& policy,
                   const SolveLimits& limits) {
  const std::vector<int> zv = sorted_unique(zvars_in, "backdoor variables", int(raw.vars.size()));
  const std::vector<int> zc = sorted_unique(zcons_in, "backdoor constraints", int(raw.cons.size()));

  const std::vector<SubIlp> comps = components(raw, zv, zc);
  int ell_eff = 0;
  for (const SubIlp& c : comps) ell_eff = std::max(ell_eff, c.vertex_count());
  const int p_c = std::max(int(zv.size() + zc.size()), ell_eff);
  // the theoretical cap is only computed when something actually needs it;
  // fully bounded instances never pay for the factorial blowup
  const Int cap = policy.paper_ml && has_open_domain(raw)
                      ? domain_bound_ml(p_c, instance_size_measure(raw))
                      : policy.cap;
  const CappedInstance ci = apply_caps(raw, cap);
  const Instance& inst = ci.inst;

  std::vector<int> comp_of(inst.vars.size(), -1);
  for (size_t i = 0; i < comps.size(); ++i)
    for (int v : comps[i].vars) comp_of[size_t(v)] = int(i);
  std::vector<int> zpos(inst.vars.size(), -1);
  for (size_t i = 0; i < zv.size(); ++i) zpos[size_t(zv[i])] = int(i);

  // Components whose variables sit in backdoor rows feed the table fold;
  // the rest are solved independently once their neighbor z values are known.
  std::vector<char> in_dp(comps.size(), 0);
  std::vector<std::vector<int>> tracked(comps.size());
  for (int c : zc) {
    for (const Term& t : inst.cons[size_t(c)].terms) {
      if (zpos[size_t(t.var)] >= 0) continue;
      const int owner = comp_of[size_t(t.var)];
      in_dp[size_t(owner)] = 1;
      if (tracked[size_t(owner)].empty() || tracked[size_t(owner)].back() != c)
        tracked[size_t(owner)].push_back(c);
    }
  }

  std::vector<int> last_z(comps.size(), -1);
  for (size_t i = 0; i < comps.size(); ++i) {
    for (int c : comps[i].cons)
      for (const Term& t : inst.cons[size_t(c)].terms)
        if (zpos[size_t(t.var)] >= 0) last_z[i] = std::max(last_z[i], zpos[size_t(t.var)]);
  }

  std::vector<std::vector<int>> scalar_at(zv.size() + 1);
  std::vector<int> dp_comps;
  for (size_t i = 0; i < comps.size(); ++i) {
    if (in_dp[i])
      dp_comps.push_back(int(i));
    else
      scalar_at[size_t(last_z[i] + 1)].push_back(int(i));
  }

  std::vector<std::map<std::vector<Int>, ScalarBest>> scalar_memo(comps.size());
  std::vector<std::map<std::vector<Int>, std::vector<Option>>> option_memo(comps.size());
  std::vector<const ScalarBest*> scalar_cur(comps.size(), nullptr);
  std::vector<std::optional<Int>> fixed(inst.vars.size());

  auto eval_scalar = [&](int c) -> const ScalarBest* {
    CompEnum ce = build_comp(inst, comps[size_t(c)], fixed, {});
    auto [it, fresh] = scalar_memo[size_t(c)].try_emplace(ce.target);
    if (fresh) {
      ScalarBest& sb = it->second;
      enumerate_comp(ce, limits.enum_nodes,
                     [&](const std::vector<Int>& vals, const Int& obj, const std::vector<Int>&) {
                       if (!sb.feasible || obj > sb.obj) {
                         sb.feasible = true;
                         sb.obj = obj;
                         sb.values = vals;
                       }
                     });
    }
    return &it->second;
  };

  auto options_for = [&](int c) -> const std::vector<Option>* {
    CompEnum ce = build_comp(inst, comps[size_t(c)], fixed, tracked[size_t(c)]);
    auto [it, fresh] = option_memo[size_t(c)].try_emplace(ce.target);
    if (fresh) {
      enumerate_comp(ce, limits.enum_nodes,
                     [&](const std::vector<Int>& vals, const Int& obj, const std::vector<Int>& zp) {
                       it->second.push_back(Option{vals, obj, zp});
                     });
    }
    return &it->second;
  };

  std::optional<Int> best_obj;
  std::vector<Int> best_x;

  auto finalize = [&](const Int& acc_obj) {
    // residual targets of the backdoor rows once z is fixed
    std::vector<Int> ztarget;
    std::vector<int> zlast(zc.size(), -1);  // last dp component touching the row
    std::unordered_map<int, int> zrow_pos;
    for (size_t i = 0; i < zc.size(); ++i) zrow_pos.emplace(zc[i], int(i));
    for (size_t i = 0; i < zc.size(); ++i) {
      const Constraint& row = inst.cons[size_t(zc[i])];
      Int tgt = row.rhs;
      for (const Term& t : row.terms) {
        if (zpos[size_t(t.var)] >= 0)
          tgt -= t.coeff * *fixed[size_t(t.var)];
      }
      ztarget.push_back(std::move(tgt));
    }
    for (size_t di = 0; di < dp_comps.size(); ++di)
      for (int c : tracked[size_t(dp_comps[di])]) zlast[size_t(zrow_pos.at(c))] = int(di);
    for (size_t i = 0; i < zc.size(); ++i)
      if (zlast[i] < 0 && ztarget[i] != 0) return;  // untouched row cannot be met

    std::vector<int> live;      // positions into zc/ztarget
    for (size_t i = 0; i < zc.size(); ++i)
      if (zlast[i] >= 0) live.push_back(int(i));

    std::map<std::vector<Int>, DpEntry> state;
    state.emplace(std::vector<Int>(live.size(), Int(0)), DpEntry{});

    for (size_t di = 0; di < dp_comps.size() && !state.empty(); ++di) {
      const int c = dp_comps[di];
      const std::vector<Option>& opts = *options_for(c);

      std::unordered_map<int, int> live_pos;
      for (size_t p = 0; p < live.size(); ++p) live_pos.emplace(live[p], int(p));
      std::vector<std::pair<int, int>> addmap;  // (live position, tracked index)
      for (size_t ti = 0; ti < tracked[size_t(c)].size(); ++ti)
        addmap.emplace_back(live_pos.at(zrow_pos.at(tracked[size_t(c)][ti])), int(ti));

      std::vector<int> fin_pos, keep_pos;
      for (size_t p = 0; p < live.size(); ++p)
        (zlast[size_t(live[p])] == int(di) ? fin_pos : keep_pos).push_back(int(p));

      // options grouped by what they add to the rows this fold finalizes
      std::map<std::vector<Int>, std::vector<int>> groups;
      for (size_t oi = 0; oi < opts.size(); ++oi) {
        std::vector<Int> fin_add(fin_pos.size(), Int(0));
        for (const auto& [p, ti] : addmap) {
          auto at = std::find(fin_pos.begin(), fin_pos.end(), p);
          if (at != fin_pos.end()) fin_add[size_t(at - fin_pos.begin())] = opts[oi].zadd[size_t(ti)];
        }
        groups[std::move(fin_add)].push_back(int(oi));
      }

      std::map<std::vector<Int>, DpEntry> next;
      for (const auto& [key, entry] : state) {
        std::vector<Int> need;
        for (int p : fin_pos) need.push_back(ztarget[size_t(live[size_t(p)])] - key[size_t(p)]);
        auto git = groups.find(need);
        if (git == groups.end()) continue;
        for (int oi : git->second) {
          const Option& opt = opts[size_t(oi)];
          std::vector<Int> full = key;
          for (const auto& [p, ti] : addmap) full[size_t(p)] += opt.zadd[size_t(ti)];
          std::vector<Int> proj;
          for (int p : keep_pos) proj.push_back(full[size_t(p)]);
          DpEntry cand;
          cand.obj = entry.obj + opt.obj;
          cand.values = entry.values;
          cand.values.insert(cand.values.end(), opt.values.begin(), opt.values.end());
          auto [sit, fresh] = next.try_emplace(std::move(proj), std::move(cand));
          if (!fresh && cand.obj > sit->second.obj) sit->second = std::move(cand);
          if (static_cast<long long>(next.size()) > limits.dp_keys)
            throw LimitError("dp table limit exceeded");
        }
      }
      state = std::move(next);
      std::vector<int> nlive;
      for (int p : keep_pos) nlive.push_back(live[size_t(p)]);
      live = std::move(nlive);
    }
    if (state.empty()) return;

    const DpEntry& done = state.begin()->second;
    const Int total = acc_obj + done.obj;
    if (best_obj && total <= *best_obj) return;

    std::vector<Int> x(inst.vars.size(), Int(0));
    for (int v : zv) x[size_t(v)] = *fixed[size_t(v)];
    for (size_t i = 0; i < comps.size(); ++i) {
      if (in_dp[i]) continue;
      const ScalarBest* sb = scalar_cur[i];
      if (!sb || !sb->feasible) throw std::logic_error("engine: missing scalar witness");
      std::vector<int> vars = comps[i].vars;
      std::sort(vars.begin(), vars.end());
      for (size_t j = 0; j < vars.size(); ++j) x[size_t(vars[j])] = sb->values[j];
    }
    size_t off = 0;
    for (int c : dp_comps) {
      std::vector<int> vars = comps[size_t(c)].vars;
      std::sort(vars.begin(), vars.end());
      for (size_t j = 0; j < vars.size(); ++j) x[size_t(vars[j])] = done.values[off + j];
      off += vars.size();
    }
    best_obj = total;
    best_x = std::move(x);
  };

  long long znodes = 0;
  auto zrec = [&](auto&& self, size_t zi, const Int& acc) -> void {
    if (zi == zv.size()) {
      finalize(acc);
      return;
    }
    const int v = zv[zi];
    const Variable& var = inst.vars[size_t(v)];
    for (Int val = *var.lower; val <= *var.upper; ++val) {
      if (++znodes > limits.enum_nodes)
        throw LimitError("backdoor enumeration limit exceeded");
      fixed[size_t(v)] = val;
      Int add = var.objective * val;
      bool ok = true;
      for (int c : scalar_at[zi + 1]) {
        const ScalarBest* sb = eval_scalar(c);
        if (!sb->feasible) {
          ok = false;
          break;
        }
        scalar_cur[size_t(c)] = sb;
        add += sb->obj;
      }
      if (ok) self(self, zi + 1, acc + add);
      fixed[size_t(v)] = std::nullopt;
    }
  };

  SolveResult res;
  res.status = SolveStatus::Infeasible;

  Int base = 0;
  bool root_ok = true;
  for (int c : scalar_at[0]) {
    const ScalarBest* sb = eval_scalar(c);
    if (!sb->feasible) {
      root_ok = false;
      break;
    }
    scalar_cur[size_t(c)] = sb;
    base += sb->obj;
  }
  if (root_ok) zrec(zrec, 0, base);

  if (!best_obj) return res;
  res.status = SolveStatus::Optimal;
  res.objective = *best_obj;
  res.assignment = std::move(best_x);
  finish_status(ci, policy, res);
  return res;
}

}  // namespace

SolveResult brute_force_oracle(const Instance& inst, long long limit) {
  Int space = 1;
  for (const Variable& v : inst.vars) {
    if (!v.lower || !v.upper)
      throw std::invalid_argument("brute_force_oracle: all domains must be finite");
    if (*v.upper < *v.lower) {
      SolveResult res;
      res.status = SolveStatus::Infeasible;
      return res;
    }
    space *= *v.upper - *v.lower + 1;
    if (space > limit) throw LimitError("oracle search space exceeds limit");
  }

  std::vector<std::vector<std::pair<int, Int>>> var_rows(inst.vars.size());
  for (size_t c = 0; c < inst.cons.size(); ++c)
    for (const Term& t : inst.cons[c].terms) var_rows[size_t(t.var)].emplace_back(int(c), t.coeff);

  std::vector<Int> partial(inst.cons.size(), Int(0));
  std::vector<Int> x(inst.vars.size(), Int(0));
  std::optional<Int> best;
  std::vector<Int> best_x;

  struct Walker {
    const Instance& inst;
    const std::vector<std::vector<std::pair<int, Int>>>& var_rows;
    std::vector<Int>& partial;
    std::vector<Int>& x;
    std::optional<Int>& best;
    std::vector<Int>& best_x;
    Int obj = 0;

    void walk(size_t d) {
      if (d == inst.vars.size()) {
        for (size_t c = 0; c < inst.cons.size(); ++c)
          if (partial[c] != inst.cons[c].rhs) return;
        if (!best || obj > *best) {
          best = obj;
          best_x = x;
        }
        return;
      }
      const Variable& v = inst.vars[d];
      for (Int val = *v.lower; val <= *v.upper; ++val) {
        x[d] = val;
        obj += v.objective * val;
        for (const auto& [c, a] : var_rows[d]) partial[size_t(c)] += a * val;
        walk(d + 1);
        for (const auto& [c, a] : var_rows[d]) partial[size_t(c)] -= a * val;
        obj -= v.objective * val;
      }
    }
  };
  Walker w{inst, var_rows, partial, x, best, best_x};
  w.walk(0);

  SolveResult res;
  if (!best) {
    res.status = SolveStatus::Infeasible;
    return res;
  }
  res.status = SolveStatus::Optimal;
  res.objective = *best;
  res.assignment = std::move(best_x);
  return res;
}

SolveResult solve_compact(const Instance& inst, int ell, const CapPolicy& policy,
                          const SolveLimits& limits) {
  if (ell < 0) throw std::invalid_argument("solve_compact: negative ell");
  for (const SubIlp& c : components(inst, {}, {}))
    if (c.vertex_count() > ell)
      throw std::invalid_argument("solve_compact: instance is not ell-compact");
  return engine(inst, {}, {}, policy, limits);
}

SolveResult solve_constraint_backdoor(const Instance& inst, const std::vector<int>& zcons,
                                      const CapPolicy& policy, const SolveLimits& limits) {
  return engine(inst, {}, zcons, policy, limits);
}

SolveResult solve_variable_backdoor(const Instance& inst, const std::vector<int>& zvars,
                                    const CapPolicy& policy, const SolveLimits& limits) {
  return engine(inst, zvars, {}, policy, limits);
}

SolveResult solve_mixed_backdoor(const Instance& inst, const std::vector<int>& zvars,
                                 const std::vector<int>& zcons, const CapPolicy& policy,
                                 const SolveLimits& limits) {
  return engine(inst, zvars, zcons, policy, limits);
}

AutoOutcome solve_auto(const Instance& inst, int k_max, const CapPolicy& policy,
                       const SolveLimits& limits) {
  // probe every mode and dispatch on the smallest fracture number: a tighter
  // backdoor means fewer coupled rows/variables, which is what keeps the
  // structured solvers cheap. ties go to the earlier mode in the probe order.
  AutoOutcome out;
  std::optional<FractureResult> best;
  std::optional<Mode> best_mode;
  for (Mode m : {Mode::Constraint, Mode::Variable, Mode::Mixed}) {
    auto det = fracture_number(inst, m, k_max);
    if (det && (!best || det->k < best->k)) {
      best = std::move(det);
      best_mode = m;
    }
  }
  if (best) {
    switch (*best_mode) {
      case Mode::Constraint:
        out.result = solve_constraint_backdoor(inst, best->bd.cons, policy, limits);
        out.strategy = "constraint-backdoor";
        break;
      case Mode::Variable:
        out.result = solve_variable_backdoor(inst, best->bd.vars, policy, limits);
        out.strategy = "variable-backdoor";
        break;
      case Mode::Mixed:
        out.result = solve_mixed_backdoor(inst, best->bd.vars, best->bd.cons, policy, limits);
        out.strategy = "mixed-backdoor";
        break;
    }
    out.mode = best_mode;
    out.detection = std::move(best);
    return out;
  }
  // no structure within reach: cap the domains and enumerate outright
  const Int cap = policy.paper_ml && has_open_domain(inst)
                      ? domain_bound_ml(0, instance_size_measure(inst))
                      : policy.cap;
  const CappedInstance ci = apply_caps(inst, cap);
  out.result = brute_force_oracle(ci.inst);
  finish_status(ci, policy, out.result);
  out.strategy = "oracle";
  return out;
}

}  // namespace ilpfrac
