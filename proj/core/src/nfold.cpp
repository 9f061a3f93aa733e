#include "ilpfrac/nfold.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace ilpfrac {

namespace {

std::string fresh_var_name(const Instance& inst, std::string base) {
  while (inst.var_index(base) >= 0) base.insert(base.begin(), '_');
  return base;
}

std::string fresh_cons_name(const Instance& inst, std::string base) {
  auto taken = [&](const std::string& s) {
    for (const Constraint& c : inst.cons)
      if (c.name == s) return true;
    return false;
  };
  while (taken(base)) base.insert(base.begin(), '_');
  return base;
}

struct Extension {
  std::vector<int> copies;  // copies[i] duplicates comp.vars[i]
};

// Duplicates each component column: every local row gets the copied column
// with the original coefficients appended. First kind pins the copies to
// zero, second kind moves the original domain onto the copies instead.
Extension extend_impl(Instance& inst, const SubIlp& comp, ExtensionKind kind) {
  std::vector<int> vars = comp.vars;
  std::sort(vars.begin(), vars.end());
  std::vector<int> cons = comp.cons;
  std::sort(cons.begin(), cons.end());

  Extension ext;
  std::unordered_map<int, int> copy_of;
  for (int v : vars) {
    MaybeInt lo = inst.vars[size_t(v)].lower;
    MaybeInt hi = inst.vars[size_t(v)].upper;
    std::string name = fresh_var_name(inst, "_ext_" + inst.vars[size_t(v)].name);
    int id;
    if (kind == ExtensionKind::First) {
      id = add_variable(inst, std::move(name), Int(0), Int(0), Int(0));
    } else {
      id = add_variable(inst, std::move(name), std::move(lo), std::move(hi), Int(0));
      inst.vars[size_t(v)].lower = Int(0);
      inst.vars[size_t(v)].upper = Int(0);
    }
    ext.copies.push_back(id);
    copy_of.emplace(v, id);
  }
  for (int c : cons) {
    const std::vector<Term> snapshot = inst.cons[size_t(c)].terms;
    for (const Term& t : snapshot) {
      auto it = copy_of.find(t.var);
      if (it != copy_of.end()) inst.cons[size_t(c)].terms.push_back(Term{it->second, t.coeff});
    }
  }
  return ext;
}

}  // namespace

Instance extend_component(const Instance& inst, const SubIlp& comp, ExtensionKind kind) {
  Instance out = inst;
  extend_impl(out, comp, kind);
  return out;
}

PaddedInstance pad_to_uniform(const Instance& inst, const TypePartition& part,
                              const std::vector<int>& zvars, const std::vector<int>& zcons) {
  PaddedInstance out;
  out.instance = inst;
  out.comps = part.comps;
  out.classes = part.classes;
  out.extended.assign(part.comps.size(), 0);
  out.origin.resize(inst.vars.size());
  for (size_t i = 0; i < inst.vars.size(); ++i) out.origin[i] = int(i);

  const int target = part.max_multiplicity();
  if (target == 0) return out;

  std::vector<int> zv = zvars;
  std::sort(zv.begin(), zv.end());
  std::vector<char> is_zvar(inst.vars.size(), 0);
  for (int v : zv) is_zvar[size_t(v)] = 1;
  std::vector<int> zc = zcons;
  std::sort(zc.begin(), zc.end());

  int pad_counter = 0;
  for (size_t t = 0; t < out.classes.size(); ++t) {
    TypeClass& cls = out.classes[t];
    const int mult = int(cls.members.size());
    if (mult == target) continue;

    // Clone the representative while it is still pristine; extensions of this
    // class come afterwards so the clone scan sees only original terms.
    const SubIlp rep = out.comps[size_t(cls.members.front())];
    std::vector<SubIlp> clones;
    for (int extra = 0; extra < target - mult; ++extra) {
      const std::string tag = "_pad" + std::to_string(pad_counter++) + "_";
      Instance& cur = out.instance;
      SubIlp clone;
      std::unordered_map<int, int> cloned_var;
      for (int v : rep.vars) {
        int id = add_variable(cur, fresh_var_name(cur, tag + cur.vars[size_t(v)].name),
                              cur.vars[size_t(v)].lower, cur.vars[size_t(v)].upper,
                              cur.vars[size_t(v)].objective);
        cloned_var.emplace(v, id);
        clone.vars.push_back(id);
        out.origin.push_back(std::nullopt);
      }
      for (int c : rep.cons) {
        std::vector<Term> terms;
        for (const Term& tm : cur.cons[size_t(c)].terms) {
          auto it = cloned_var.find(tm.var);
          if (it != cloned_var.end())
            terms.push_back(Term{it->second, tm.coeff});
          else if (is_zvar[size_t(tm.var)])
            terms.push_back(Term{tm.var, tm.coeff});
          else
            throw std::logic_error("pad_to_uniform: component row touches a foreign variable");
        }
        int id = add_constraint(cur, fresh_cons_name(cur, tag + cur.cons[size_t(c)].name),
                                std::move(terms), cur.cons[size_t(c)].rhs);
        clone.cons.push_back(id);
      }
      // mirror the backdoor-row coefficients onto the clone columns
      for (int c : zc) {
        const std::vector<Term> snapshot = cur.cons[size_t(c)].terms;
        for (const Term& tm : snapshot) {
          auto it = cloned_var.find(tm.var);
          if (it != cloned_var.end()) cur.cons[size_t(c)].terms.push_back(Term{it->second, tm.coeff});
        }
      }
      clones.push_back(std::move(clone));
    }

    for (int m : cls.members) {
      Extension ext = extend_impl(out.instance, out.comps[size_t(m)], ExtensionKind::First);
      for (int id : ext.copies) {
        out.comps[size_t(m)].vars.push_back(id);
        out.origin.push_back(std::nullopt);
      }
      out.extended[size_t(m)] = 1;
    }
    for (SubIlp& clone : clones) {
      Extension ext = extend_impl(out.instance, clone, ExtensionKind::Second);
      for (int id : ext.copies) {
        clone.vars.push_back(id);
        out.origin.push_back(std::nullopt);
      }
      out.comps.push_back(std::move(clone));
      out.extended.push_back(1);
      cls.members.push_back(int(out.comps.size()) - 1);
    }
  }
  return out;
}

namespace {

std::vector<int> invert(const std::vector<int>& perm) {
  std::vector<int> inv(perm.size());
  for (size_t i = 0; i < perm.size(); ++i) inv[size_t(perm[i])] = int(i);
  return inv;
}

std::vector<int> identity(size_t n) {
  std::vector<int> id(n);
  for (size_t i = 0; i < n; ++i) id[i] = int(i);
  return id;
}

}  // namespace

FourBlock to_four_block(const Instance& inst, const Backdoor& bd) {
  std::vector<int> zv = bd.vars;
  std::sort(zv.begin(), zv.end());
  std::vector<int> zc = bd.cons;
  std::sort(zc.begin(), zc.end());

  TypePartition part = classify(inst, zv, zc);
  PaddedInstance padded = pad_to_uniform(inst, part, zv, zc);
  const int n_bricks = part.max_multiplicity();

  FourBlock fb;
  fb.r = int(zc.size());
  fb.s = int(zv.size());
  fb.n = n_bricks;

  // Per class: canonical layout of the representative, then each member's
  // columns and rows arranged to play the same roles.
  struct ClassLayout {
    std::vector<std::vector<int>> member_cols;  // global var ids per member slot
    std::vector<std::vector<int>> member_rows;  // global cons ids per member slot
  };
  std::vector<ClassLayout> layouts;
  for (const TypeClass& cls : padded.classes) {
    if (int(cls.members.size()) != n_bricks)
      throw std::logic_error("to_four_block: padding left a deficient class");
    const int rep = cls.members.front();
    const LocalData& repd = part.data[size_t(rep)];
    const CanonicalForm canon = canonical_form(repd);
    const size_t nv = repd.comp.vars.size();
    const size_t nc = repd.comp.cons.size();

    ClassLayout lay;
    for (int m : cls.members) {
      std::vector<int> inv_var, inv_cons;
      if (m < int(part.comps.size()) && m != rep) {
        auto bij = same_type(part.data[size_t(m)], repd);
        if (!bij) throw std::logic_error("to_four_block: class member lost its type");
        inv_var = invert(bij->var_map);
        inv_cons = invert(bij->cons_map);
      } else {
        inv_var = identity(nv);
        inv_cons = identity(nc);
      }
      if (padded.extended[size_t(m)] != padded.extended[size_t(rep)])
        throw std::logic_error("to_four_block: uneven extension inside a class");

      std::vector<int> cols, rows;
      for (size_t i = 0; i < nv; ++i)
        cols.push_back(padded.comps[size_t(m)].vars[size_t(inv_var[size_t(canon.var_order[i])])]);
      if (padded.extended[size_t(m)])
        for (size_t i = 0; i < nv; ++i)
          cols.push_back(
              padded.comps[size_t(m)].vars[nv + size_t(inv_var[size_t(canon.var_order[i])])]);
      for (size_t i = 0; i < nc; ++i)
        rows.push_back(padded.comps[size_t(m)].cons[size_t(inv_cons[size_t(canon.cons_order[i])])]);
      lay.member_cols.push_back(std::move(cols));
      lay.member_rows.push_back(std::move(rows));
    }
    layouts.push_back(std::move(lay));
  }

  std::vector<int> var_order = zv;
  std::vector<int> cons_order = zc;
  for (int j = 0; j < n_bricks; ++j) {
    for (const ClassLayout& lay : layouts) {
      var_order.insert(var_order.end(), lay.member_cols[size_t(j)].begin(),
                       lay.member_cols[size_t(j)].end());
      cons_order.insert(cons_order.end(), lay.member_rows[size_t(j)].begin(),
                        lay.member_rows[size_t(j)].end());
    }
  }
  if (var_order.size() != padded.instance.vars.size() ||
      cons_order.size() != padded.instance.cons.size())
    throw std::logic_error("to_four_block: layout does not cover the padded instance");

  fb.t = 0;
  fb.u = 0;
  for (const ClassLayout& lay : layouts) {
    if (lay.member_cols.empty()) continue;
    fb.t += int(lay.member_cols.front().size());
    fb.u += int(lay.member_rows.front().size());
  }

  std::vector<int> new_of(var_order.size());
  for (size_t i = 0; i < var_order.size(); ++i) new_of[size_t(var_order[i])] = int(i);

  Instance stacked;
  for (int v : var_order) {
    const Variable& src = padded.instance.vars[size_t(v)];
    add_variable(stacked, src.name, src.lower, src.upper, src.objective);
    if (padded.origin[size_t(v)])
      fb.origin.push_back(inst.vars[size_t(*padded.origin[size_t(v)])].name);
    else
      fb.origin.push_back(std::nullopt);
  }
  for (int c : cons_order) {
    const Constraint& src = padded.instance.cons[size_t(c)];
    std::vector<Term> terms;
    for (const Term& tm : src.terms) terms.push_back(Term{new_of[size_t(tm.var)], tm.coeff});
    std::sort(terms.begin(), terms.end(),
              [](const Term& a, const Term& b) { return a.var < b.var; });
    add_constraint(stacked, src.name, std::move(terms), src.rhs);
  }
  fb.stacked = std::move(stacked);
  for (const Variable& v : inst.vars) fb.original_vars.push_back(v.name);

  auto dense_block = [&](int row0, int rows, int col0, int cols) {
    std::vector<std::vector<Int>> blk(size_t(rows), std::vector<Int>(size_t(cols), Int(0)));
    for (int f = 0; f < rows; ++f)
      for (const Term& tm : fb.stacked.cons[size_t(row0 + f)].terms)
        if (tm.var >= col0 && tm.var < col0 + cols) blk[size_t(f)][size_t(tm.var - col0)] = tm.coeff;
    return blk;
  };
  fb.a1 = dense_block(0, fb.r, 0, fb.s);
  fb.a2 = dense_block(0, fb.r, fb.s, fb.t);
  fb.a3 = dense_block(fb.r, fb.u, 0, fb.s);
  fb.a4 = dense_block(fb.r, fb.u, fb.s, fb.t);

  const auto pattern = four_block_pattern(fb);
  for (size_t f = 0; f < pattern.size(); ++f)
    for (size_t j = 0; j < pattern[f].size(); ++j)
      if (pattern[f][j] != fb.stacked.coeff(int(f), int(j)))
        throw std::logic_error("to_four_block: stacked matrix violates the block pattern");

  return fb;
}

std::vector<Int> lift_solution(const FourBlock& fb, const std::vector<Int>& stacked_x) {
  if (stacked_x.size() != fb.stacked.vars.size())
    throw std::invalid_argument("lift_solution: assignment size mismatch");
  std::unordered_map<std::string, Int> carry;
  for (size_t i = 0; i < fb.origin.size(); ++i) {
    if (!fb.origin[i]) continue;
    if (!carry.emplace(*fb.origin[i], stacked_x[i]).second)
      throw std::logic_error("lift_solution: two columns carry the same original variable");
  }
  std::vector<Int> out;
  for (const std::string& name : fb.original_vars) {
    auto it = carry.find(name);
    if (it == carry.end())
      throw std::logic_error("lift_solution: original variable '" + name + "' has no carrier");
    out.push_back(it->second);
  }
  return out;
}

std::vector<std::vector<Int>> four_block_pattern(const FourBlock& fb) {
  const int rows = fb.r + fb.n * fb.u;
  const int cols = fb.s + fb.n * fb.t;
  std::vector<std::vector<Int>> m(size_t(rows), std::vector<Int>(size_t(cols), Int(0)));
  for (int f = 0; f < fb.r; ++f) {
    for (int j = 0; j < fb.s; ++j) m[size_t(f)][size_t(j)] = fb.a1[size_t(f)][size_t(j)];
    for (int b = 0; b < fb.n; ++b)
      for (int j = 0; j < fb.t; ++j)
        m[size_t(f)][size_t(fb.s + b * fb.t + j)] = fb.a2[size_t(f)][size_t(j)];
  }
  for (int b = 0; b < fb.n; ++b) {
    for (int f = 0; f < fb.u; ++f) {
      const size_t row = size_t(fb.r + b * fb.u + f);
      for (int j = 0; j < fb.s; ++j) m[row][size_t(j)] = fb.a3[size_t(f)][size_t(j)];
      for (int j = 0; j < fb.t; ++j)
        m[row][size_t(fb.s + b * fb.t + j)] = fb.a4[size_t(f)][size_t(j)];
    }
  }
  return m;
}

}  // namespace ilpfrac
