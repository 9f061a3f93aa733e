#include "ilpfrac/model.hpp"

#include "ilpfrac/errors.hpp"

#include "json.hpp"

#include <cmath>
#include <unordered_map>
#include <unordered_set>

namespace ilpfrac {

using json = nlohmann::ordered_json;

namespace {

bool is_decimal_literal(const std::string& s) {
  size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  if (i >= s.size()) return false;
  for (; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9') return false;
  return true;
}

Int parse_int_value(const json& j, const std::string& ctx) {
  if (j.is_number_integer()) return Int(j.get<long long>());
  if (j.is_number_unsigned()) return Int(j.get<unsigned long long>());
  if (j.is_number_float()) {
    double d = j.get<double>();
    if (std::trunc(d) == d && std::fabs(d) < 9007199254740992.0)
      return Int(static_cast<long long>(d));
    throw ParseError(ctx + ": number is not an exactly representable integer, "
                           "write it as a decimal string");
  }
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (!is_decimal_literal(s))
      throw ParseError(ctx + ": bad integer literal '" + s + "'");
    return Int(s);
  }
  throw ParseError(ctx + ": expected an integer");
}

MaybeInt parse_bound(const json& j, const std::string& ctx) {
  if (j.is_null()) return std::nullopt;
  return parse_int_value(j, ctx);
}

json emit_int(const Int& v) {
  if (fits_json_number(v)) return json(v.convert_to<long long>());
  return json(v.str());
}

json emit_bound(const MaybeInt& b) {
  if (!b) return json(nullptr);
  return emit_int(*b);
}

}  // namespace

int Instance::var_index(std::string_view name) const {
  for (size_t i = 0; i < vars.size(); ++i)
    if (vars[i].name == name) return int(i);
  return -1;
}

Int Instance::coeff(int c, int v) const {
  for (const Term& t : cons[c].terms)
    if (t.var == v) return t.coeff;
  return 0;
}

Int Instance::max_abs_coeff() const {
  Int best = 0;
  for (const Constraint& c : cons)
    for (const Term& t : c.terms)
      if (abs_int(t.coeff) > best) best = abs_int(t.coeff);
  return best;
}

Int Instance::max_abs_rhs() const {
  Int best = 0;
  for (const Constraint& c : cons)
    if (abs_int(c.rhs) > best) best = abs_int(c.rhs);
  return best;
}

long long Instance::nonzero_count() const {
  long long total = 0;
  for (const Constraint& c : cons) total += static_cast<long long>(c.terms.size());
  return total;
}

EvalResult evaluate(const Instance& inst, const std::vector<Int>& x) {
  if (x.size() != inst.vars.size())
    throw std::invalid_argument("evaluate: assignment size mismatch");
  EvalResult res;
  res.objective = 0;
  for (size_t i = 0; i < x.size(); ++i) res.objective += inst.vars[i].objective * x[i];
  for (size_t i = 0; i < x.size(); ++i) {
    const Variable& v = inst.vars[i];
    if (v.lower && x[i] < *v.lower) return res;
    if (v.upper && x[i] > *v.upper) return res;
  }
  for (const Constraint& c : inst.cons) {
    Int sum = 0;
    for (const Term& t : c.terms) sum += t.coeff * x[t.var];
    if (sum != c.rhs) return res;
  }
  res.feasible = true;
  return res;
}

int add_variable(Instance& inst, std::string name, MaybeInt lower, MaybeInt upper, Int objective) {
  if (name.empty()) throw ParseError("variable with empty name");
  if (inst.var_index(name) >= 0) throw ParseError("duplicate variable name '" + name + "'");
  if (lower && upper && *lower > *upper)
    throw ParseError("variable '" + name + "': lower bound exceeds upper bound");
  inst.vars.push_back(Variable{std::move(name), std::move(lower), std::move(upper), std::move(objective)});
  return int(inst.vars.size()) - 1;
}

int add_constraint(Instance& inst, std::string name, std::vector<Term> terms, Int rhs) {
  if (name.empty()) throw ParseError("constraint with empty name");
  for (const Constraint& c : inst.cons)
    if (c.name == name) throw ParseError("duplicate constraint name '" + name + "'");
  std::vector<Term> kept;
  std::unordered_set<int> seen;
  for (Term& t : terms) {
    if (t.var < 0 || t.var >= int(inst.vars.size()))
      throw ParseError("constraint '" + name + "': bad variable index");
    if (!seen.insert(t.var).second)
      throw ParseError("constraint '" + name + "': variable '" + inst.vars[t.var].name +
                       "' appears twice");
    if (t.coeff != 0) kept.push_back(std::move(t));
  }
  inst.cons.push_back(Constraint{std::move(name), std::move(kept), std::move(rhs)});
  return int(inst.cons.size()) - 1;
}

Instance parse_instance(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const std::exception& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  if (!root.is_object() || !root.contains("variables") || !root.contains("constraints"))
    throw ParseError("instance must be an object with 'variables' and 'constraints'");

  Instance inst;
  std::unordered_map<std::string, int> index;

  const json& jvars = root["variables"];
  if (!jvars.is_array()) throw ParseError("'variables' must be an array");
  for (const json& jv : jvars) {
    if (!jv.is_object() || !jv.contains("name") || !jv["name"].is_string())
      throw ParseError("variable entries need a string 'name'");
    const std::string name = jv["name"].get<std::string>();
    const std::string ctx = "variable '" + name + "'";
    MaybeInt lower = jv.contains("lower") ? parse_bound(jv["lower"], ctx + ".lower") : std::nullopt;
    MaybeInt upper = jv.contains("upper") ? parse_bound(jv["upper"], ctx + ".upper") : std::nullopt;
    Int obj = jv.contains("objective") ? parse_int_value(jv["objective"], ctx + ".objective") : Int(0);
    int id = add_variable(inst, name, std::move(lower), std::move(upper), std::move(obj));
    index.emplace(name, id);
  }

  const json& jcons = root["constraints"];
  if (!jcons.is_array()) throw ParseError("'constraints' must be an array");
  int row = 0;
  for (const json& jc : jcons) {
    if (!jc.is_object() || !jc.contains("name") || !jc["name"].is_string())
      throw ParseError("constraint entries need a string 'name'");
    const std::string name = jc["name"].get<std::string>();
    const std::string ctx = "constraint '" + name + "'";
    if (!jc.contains("coeffs") || !jc["coeffs"].is_object())
      throw ParseError(ctx + ": missing 'coeffs' object");
    if (!jc.contains("rhs")) throw ParseError(ctx + ": missing 'rhs'");

    std::vector<Term> terms;
    std::unordered_set<std::string> seen;
    for (auto it = jc["coeffs"].begin(); it != jc["coeffs"].end(); ++it) {
      if (!seen.insert(it.key()).second)
        throw ParseError(ctx + ": duplicate coefficient for '" + it.key() + "'");
      auto found = index.find(it.key());
      if (found == index.end())
        throw ParseError(ctx + ": unknown variable '" + it.key() + "'");
      Int coeff = parse_int_value(it.value(), ctx + ".coeffs['" + it.key() + "']");
      if (coeff != 0) terms.push_back(Term{found->second, std::move(coeff)});
    }
    Int rhs = parse_int_value(jc["rhs"], ctx + ".rhs");

    std::string relation = "=";
    if (jc.contains("relation")) {
      if (!jc["relation"].is_string()) throw ParseError(ctx + ": 'relation' must be a string");
      relation = jc["relation"].get<std::string>();
    }
    if (relation == "<=" || relation == ">=") {
      // equation form: ax + s = b for <=, ax - s = b for >=
      const std::string slack_name = "_slack_" + std::to_string(row);
      if (index.count(slack_name))
        throw ParseError(ctx + ": slack name '" + slack_name + "' collides with a declared variable");
      int sid = add_variable(inst, slack_name, Int(0), std::nullopt, Int(0));
      index.emplace(slack_name, sid);
      terms.push_back(Term{sid, relation == "<=" ? Int(1) : Int(-1)});
    } else if (relation != "=") {
      throw ParseError(ctx + ": relation must be one of '=', '<=', '>='");
    }
    add_constraint(inst, name, std::move(terms), std::move(rhs));
    ++row;
  }
  return inst;
}

std::string serialize_instance(const Instance& inst) {
  json root = json::object();
  json jvars = json::array();
  for (const Variable& v : inst.vars) {
    json jv = json::object();
    jv["name"] = v.name;
    jv["lower"] = emit_bound(v.lower);
    jv["upper"] = emit_bound(v.upper);
    jv["objective"] = emit_int(v.objective);
    jvars.push_back(std::move(jv));
  }
  root["variables"] = std::move(jvars);
  json jcons = json::array();
  for (const Constraint& c : inst.cons) {
    json jc = json::object();
    jc["name"] = c.name;
    json coeffs = json::object();
    for (const Term& t : c.terms) coeffs[inst.vars[t.var].name] = emit_int(t.coeff);
    jc["coeffs"] = std::move(coeffs);
    jc["relation"] = "=";
    jc["rhs"] = emit_int(c.rhs);
    jcons.push_back(std::move(jc));
  }
  root["constraints"] = std::move(jcons);
  return root.dump(2) + "\n";
}

}  // namespace ilpfrac
