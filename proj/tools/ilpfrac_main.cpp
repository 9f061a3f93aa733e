#include "ilpfrac/backdoor.hpp"
#include "ilpfrac/errors.hpp"
#include "ilpfrac/model.hpp"
#include "ilpfrac/nfold.hpp"
#include "ilpfrac/reductions.hpp"
#include "ilpfrac/solve.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

using namespace ilpfrac;
using json = nlohmann::ordered_json;

namespace {

// exit codes: 0 ok, 1 negative answer, 2 bad input, 3 limit hit, 4 no backdoor
constexpr int kExitNegative = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitLimit = 3;
constexpr int kExitNoBackdoor = 4;

struct NoBackdoorError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot open '" + path + "' for writing");
  out << text;
}

json emit_int(const Int& v) {
  if (fits_json_number(v)) return json(v.convert_to<long long>());
  return json(v.str());
}

Int parse_int_arg(const std::string& s, const std::string& what) {
  size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  if (i >= s.size()) throw ParseError(what + ": bad integer '" + s + "'");
  for (; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9') throw ParseError(what + ": bad integer '" + s + "'");
  return Int(s);
}

CapPolicy cap_from_string(const std::string& s) {
  CapPolicy policy;
  if (s == "paper-mL") {
    policy.paper_ml = true;
    return policy;
  }
  policy.cap = parse_int_arg(s, "--cap");
  if (policy.cap < 0) throw ParseError("--cap: must be nonnegative");
  return policy;
}

json names_of_vars(const Instance& inst, const std::vector<int>& ids) {
  json arr = json::array();
  for (int v : ids) arr.push_back(inst.vars[size_t(v)].name);
  return arr;
}

json names_of_cons(const Instance& inst, const std::vector<int>& ids) {
  json arr = json::array();
  for (int c : ids) arr.push_back(inst.cons[size_t(c)].name);
  return arr;
}

const char* status_name(SolveStatus s) {
  switch (s) {
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::OptimalWithinCap: return "optimal-within-cap";
  }
  return "?";
}

// ---- analyze ----

struct AnalyzeArgs {
  std::string input;
  std::string output;
  std::string format = "json";
  int kmax = 8;
};

int run_analyze(const AnalyzeArgs& a) {
  const Instance inst = parse_instance(read_input(a.input));
  json modes = json::object();
  std::string text;
  for (Mode mode : {Mode::Variable, Mode::Constraint, Mode::Mixed}) {
    json entry = json::object();
    auto det = fracture_number(inst, mode, a.kmax);
    if (det) {
      entry["fracture_number"] = det->k;
      json wit = json::object();
      wit["variables"] = names_of_vars(inst, det->bd.vars);
      wit["constraints"] = names_of_cons(inst, det->bd.cons);
      wit["ell"] = det->bd.ell;
      entry["witness"] = std::move(wit);
      text += std::string(mode_name(mode)) + ": " + std::to_string(det->k) + "\n";
    } else {
      entry["fracture_number"] = nullptr;
      text += std::string(mode_name(mode)) + ": > " + std::to_string(a.kmax) + "\n";
    }
    modes[mode_name(mode)] = std::move(entry);
  }
  if (a.format == "text") {
    write_output(a.output, text);
    return 0;
  }
  json root = json::object();
  root["variables"] = inst.vars.size();
  root["constraints"] = inst.cons.size();
  root["max_abs_coeff"] = emit_int(inst.max_abs_coeff());
  root["kmax"] = a.kmax;
  root["modes"] = std::move(modes);
  write_output(a.output, root.dump(2) + "\n");
  return 0;
}

// ---- solve ----

struct SolveArgs {
  std::string input;
  std::string output;
  std::string format = "json";
  std::string mode = "auto";
  std::string cap = "10000";
  int kmax = 6;
  long long limit_enum = 1000000;
  long long limit_dp = 1000000;
};

int run_solve(const SolveArgs& a) {
  const Instance inst = parse_instance(read_input(a.input));
  const CapPolicy policy = cap_from_string(a.cap);
  SolveLimits limits;
  limits.enum_nodes = a.limit_enum;
  limits.dp_keys = a.limit_dp;

  SolveResult res;
  std::string strategy;
  std::optional<Mode> mode;
  std::optional<FractureResult> det;

  if (a.mode == "auto") {
    AutoOutcome out = solve_auto(inst, a.kmax, policy, limits);
    res = std::move(out.result);
    strategy = out.strategy;
    mode = out.mode;
    det = std::move(out.detection);
  } else {
    auto m = mode_from_name(a.mode);
    if (!m) throw ParseError("--mode: expected auto, variable, constraint or mixed");
    det = fracture_number(inst, *m, a.kmax);
    if (!det)
      throw NoBackdoorError("no " + a.mode + " backdoor within kmax=" + std::to_string(a.kmax));
    mode = *m;
    strategy = std::string(mode_name(*m)) + "-backdoor";
    switch (*m) {
      case Mode::Variable: res = solve_variable_backdoor(inst, det->bd.vars, policy, limits); break;
      case Mode::Constraint:
        res = solve_constraint_backdoor(inst, det->bd.cons, policy, limits);
        break;
      case Mode::Mixed:
        res = solve_mixed_backdoor(inst, det->bd.vars, det->bd.cons, policy, limits);
        break;
    }
  }

  const bool feasible = res.status != SolveStatus::Infeasible;
  if (a.format == "text") {
    std::string text = std::string("status: ") + status_name(res.status) + "\n";
    text += "strategy: " + strategy + "\n";
    if (feasible) {
      text += "objective: " + int_to_string(res.objective) + "\n";
      for (size_t i = 0; i < inst.vars.size(); ++i)
        text += "  " + inst.vars[i].name + " = " + int_to_string(res.assignment[i]) + "\n";
    }
    write_output(a.output, text);
    return feasible ? 0 : kExitNegative;
  }

  json root = json::object();
  root["status"] = status_name(res.status);
  root["strategy"] = strategy;
  root["mode"] = mode ? json(mode_name(*mode)) : json(nullptr);
  root["fracture_number"] = det ? json(det->k) : json(nullptr);
  if (det) {
    json wit = json::object();
    wit["variables"] = names_of_vars(inst, det->bd.vars);
    wit["constraints"] = names_of_cons(inst, det->bd.cons);
    wit["ell"] = det->bd.ell;
    root["backdoor"] = std::move(wit);
  } else {
    root["backdoor"] = nullptr;
  }
  if (feasible) {
    root["objective"] = emit_int(res.objective);
    json x = json::object();
    for (size_t i = 0; i < inst.vars.size(); ++i) x[inst.vars[i].name] = emit_int(res.assignment[i]);
    root["assignment"] = std::move(x);
  } else {
    root["objective"] = nullptr;
    root["assignment"] = nullptr;
  }
  root["cap_hit"] = res.cap_hit;
  write_output(a.output, root.dump(2) + "\n");
  return feasible ? 0 : kExitNegative;
}

// ---- normalize ----

struct NormalizeArgs {
  std::string input;
  std::string output;
  std::string mode = "mixed";
  int kmax = 6;
};

int run_normalize(const NormalizeArgs& a) {
  const Instance inst = parse_instance(read_input(a.input));
  auto m = mode_from_name(a.mode);
  if (!m) throw ParseError("--mode: expected variable, constraint or mixed");
  auto det = fracture_number(inst, *m, a.kmax);
  if (!det)
    throw NoBackdoorError("no " + a.mode + " backdoor within kmax=" + std::to_string(a.kmax));

  const FourBlock fb = to_four_block(inst, det->bd);
  json root = json::parse(serialize_instance(fb.stacked));
  json meta = json::object();
  meta["mode"] = mode_name(*m);
  meta["fracture_number"] = det->k;
  meta["r"] = fb.r;
  meta["s"] = fb.s;
  meta["t"] = fb.t;
  meta["u"] = fb.u;
  meta["N"] = fb.n;
  json origin = json::object();
  for (size_t i = 0; i < fb.origin.size(); ++i)
    origin[fb.stacked.vars[i].name] = fb.origin[i] ? json(*fb.origin[i]) : json(nullptr);
  meta["origin"] = std::move(origin);
  auto matrix = [](const std::vector<std::vector<Int>>& m_) {
    json rows = json::array();
    for (const auto& row : m_) {
      json r = json::array();
      for (const Int& v : row) r.push_back(emit_int(v));
      rows.push_back(std::move(r));
    }
    return rows;
  };
  json blocks = json::object();
  blocks["a1"] = matrix(fb.a1);
  blocks["a2"] = matrix(fb.a2);
  blocks["a3"] = matrix(fb.a3);
  blocks["a4"] = matrix(fb.a4);
  meta["blocks"] = std::move(blocks);
  root["fourblock"] = std::move(meta);
  write_output(a.output, root.dump(2) + "\n");
  return 0;
}

// ---- generate ----

struct GenerateArgs {
  std::string output;
  std::string witness_out;
  // subset-sum
  std::string set;
  std::string target = "0";
  // graph reductions
  std::string graph;
  // random
  uint64_t seed = 1;
  int components = 3;
  int comp_size = 4;
  int global_vars = 1;
  int global_cons = 1;
  long long coeff_bound = 3;
  long long domain_bound = 3;
  long long max_enum_product = 100000;
};

void write_witness(const std::string& path, const Instance& inst, const Backdoor& bd) {
  if (path.empty()) return;
  json w = json::object();
  w["mode"] = mode_name(bd.mode);
  w["ell"] = bd.ell;
  w["variables"] = names_of_vars(inst, bd.vars);
  w["constraints"] = names_of_cons(inst, bd.cons);
  write_output(path, w.dump(2) + "\n");
}

int run_gen_subset_sum(const GenerateArgs& a) {
  std::vector<Int> values;
  std::string cur;
  std::istringstream ss(a.set);
  while (std::getline(ss, cur, ',')) {
    if (cur.empty()) throw ParseError("--set: empty entry");
    values.push_back(parse_int_arg(cur, "--set"));
  }
  if (values.empty()) throw ParseError("--set: need at least one value");
  Instance inst = gen_subset_sum(values, parse_int_arg(a.target, "--target"));
  write_output(a.output, serialize_instance(inst));
  Backdoor bd;
  bd.cons = {0};
  bd.ell = 1;
  bd.mode = Mode::Constraint;
  write_witness(a.witness_out, inst, bd);
  return 0;
}

int run_gen_graph(const GenerateArgs& a, bool coloring) {
  const SimpleGraph g = parse_graph(read_input(a.graph));
  GeneratedInstance gen = coloring ? gen_three_coloring(g) : gen_multicolored_clique(g);
  write_output(a.output, serialize_instance(gen.instance));
  write_witness(a.witness_out, gen.instance, gen.backdoor);
  return 0;
}

int run_gen_random(const GenerateArgs& a) {
  RandomFracturedParams p;
  p.seed = a.seed;
  p.num_components = a.components;
  p.component_size = a.comp_size;
  p.num_global_vars = a.global_vars;
  p.num_global_cons = a.global_cons;
  p.coeff_bound = a.coeff_bound;
  p.domain_bound = a.domain_bound;
  p.max_enum_product = a.max_enum_product;
  GeneratedInstance gen = gen_random_fractured(p);
  write_output(a.output, serialize_instance(gen.instance));
  write_witness(a.witness_out, gen.instance, gen.backdoor);
  return 0;
}

// ---- verify ----

struct VerifyArgs {
  std::string instance;
  std::string witness;
  std::string assignment;
  std::string output;
};

int run_verify(const VerifyArgs& a) {
  if (a.witness.empty() == a.assignment.empty())
    throw ParseError("verify: pass exactly one of --witness or --assignment");
  const Instance inst = parse_instance(read_input(a.instance));

  if (!a.witness.empty()) {
    json w;
    try {
      w = json::parse(read_input(a.witness));
    } catch (const std::exception& e) {
      throw ParseError(std::string("witness: malformed JSON: ") + e.what());
    }
    if (!w.is_object() || !w.contains("mode") || !w["mode"].is_string() || !w.contains("ell") ||
        !w["ell"].is_number_integer())
      throw ParseError("witness: need 'mode' string and integer 'ell'");
    auto mode = mode_from_name(w["mode"].get<std::string>());
    if (!mode) throw ParseError("witness: bad mode");
    auto collect_vars = [&](const json& arr) {
      std::vector<int> ids;
      for (const json& jn : arr) {
        int id = inst.var_index(jn.get<std::string>());
        if (id < 0) throw ParseError("witness: unknown variable '" + jn.get<std::string>() + "'");
        ids.push_back(id);
      }
      return ids;
    };
    auto collect_cons = [&](const json& arr) {
      std::vector<int> ids;
      for (const json& jn : arr) {
        const std::string name = jn.get<std::string>();
        int id = -1;
        for (size_t c = 0; c < inst.cons.size(); ++c)
          if (inst.cons[c].name == name) id = int(c);
        if (id < 0) throw ParseError("witness: unknown constraint '" + name + "'");
        ids.push_back(id);
      }
      return ids;
    };
    std::vector<int> zv =
        w.contains("variables") ? collect_vars(w["variables"]) : std::vector<int>{};
    std::vector<int> zc =
        w.contains("constraints") ? collect_cons(w["constraints"]) : std::vector<int>{};
    const bool valid = verify_backdoor(inst, zv, zc, w["ell"].get<int>(), *mode);
    json root = json::object();
    root["valid"] = valid;
    write_output(a.output, root.dump(2) + "\n");
    return valid ? 0 : kExitNegative;
  }

  json jx;
  try {
    jx = json::parse(read_input(a.assignment));
  } catch (const std::exception& e) {
    throw ParseError(std::string("assignment: malformed JSON: ") + e.what());
  }
  if (!jx.is_object()) throw ParseError("assignment: expected an object of variable values");
  std::vector<Int> x(inst.vars.size(), Int(0));
  std::vector<char> given(inst.vars.size(), 0);
  for (auto it = jx.begin(); it != jx.end(); ++it) {
    int id = inst.var_index(it.key());
    if (id < 0) throw ParseError("assignment: unknown variable '" + it.key() + "'");
    const json& jv = it.value();
    if (jv.is_number_integer())
      x[size_t(id)] = Int(jv.get<long long>());
    else if (jv.is_string())
      x[size_t(id)] = parse_int_arg(jv.get<std::string>(), "assignment");
    else
      throw ParseError("assignment: value of '" + it.key() + "' must be an integer");
    given[size_t(id)] = 1;
  }
  for (size_t i = 0; i < inst.vars.size(); ++i)
    if (!given[i]) throw ParseError("assignment: missing variable '" + inst.vars[i].name + "'");
  const EvalResult ev = evaluate(inst, x);
  json root = json::object();
  root["feasible"] = ev.feasible;
  root["objective"] = emit_int(ev.objective);
  write_output(a.output, root.dump(2) + "\n");
  return ev.feasible ? 0 : kExitNegative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fracture backdoors for integer linear programs"};
  app.require_subcommand(1);

  AnalyzeArgs an;
  CLI::App* analyze = app.add_subcommand("analyze", "detect fracture backdoors in all modes");
  analyze->add_option("instance", an.input, "instance file, or - for stdin")->required();
  analyze->add_option("--kmax", an.kmax, "largest fracture number to try");
  analyze->add_option("--format", an.format, "json or text")
      ->check(CLI::IsMember({"json", "text"}));
  analyze->add_option("-o,--output", an.output, "output file (default stdout)");

  SolveArgs so;
  CLI::App* solve = app.add_subcommand("solve", "detect structure and optimize");
  solve->add_option("instance", so.input, "instance file, or - for stdin")->required();
  solve->add_option("--mode", so.mode, "auto, variable, constraint or mixed");
  solve->add_option("--kmax", so.kmax, "largest fracture number to try");
  solve->add_option("--cap", so.cap, "bound substituted for infinite domains, or paper-mL");
  solve->add_option("--limit-enum", so.limit_enum, "enumeration node limit");
  solve->add_option("--limit-dp", so.limit_dp, "table size limit");
  solve->add_option("--format", so.format, "json or text")->check(CLI::IsMember({"json", "text"}));
  solve->add_option("-o,--output", so.output, "output file (default stdout)");

  NormalizeArgs no;
  CLI::App* normalize = app.add_subcommand("normalize", "rewrite as a four-block instance");
  normalize->add_option("instance", no.input, "instance file, or - for stdin")->required();
  normalize->add_option("--mode", no.mode, "variable, constraint or mixed");
  normalize->add_option("--kmax", no.kmax, "largest fracture number to try");
  normalize->add_option("-o,--output", no.output, "output file (default stdout)");

  GenerateArgs ge;
  CLI::App* generate = app.add_subcommand("generate", "construct benchmark instances");
  generate->require_subcommand(1);
  CLI::App* g_ss = generate->add_subcommand("subset-sum", "one row over binary variables");
  g_ss->add_option("--set", ge.set, "comma separated integers")->required();
  g_ss->add_option("--target", ge.target, "right hand side");
  CLI::App* g_col = generate->add_subcommand("three-coloring", "coloring gadget instance");
  g_col->add_option("--graph", ge.graph, "graph file, or - for stdin")->required();
  CLI::App* g_clq = generate->add_subcommand("clique", "multicolored clique instance");
  g_clq->add_option("--graph", ge.graph, "graph file, or - for stdin")->required();
  CLI::App* g_rnd = generate->add_subcommand("random", "random fractured instance");
  g_rnd->add_option("--seed", ge.seed, "rng seed");
  g_rnd->add_option("--components", ge.components, "component count");
  g_rnd->add_option("--comp-size", ge.comp_size, "max vertices per component");
  g_rnd->add_option("--global-vars", ge.global_vars, "planted backdoor variables");
  g_rnd->add_option("--global-cons", ge.global_cons, "planted backdoor constraints");
  g_rnd->add_option("--coeff-bound", ge.coeff_bound, "max coefficient magnitude");
  g_rnd->add_option("--domain-bound", ge.domain_bound, "max bound magnitude");
  g_rnd->add_option("--max-enum-product", ge.max_enum_product, "cap on the domain product");
  for (CLI::App* sub : {g_ss, g_col, g_clq, g_rnd}) {
    sub->add_option("-o,--output", ge.output, "output file (default stdout)");
    sub->add_option("--witness-out", ge.witness_out, "write the planted backdoor here");
  }

  VerifyArgs ve;
  CLI::App* verify = app.add_subcommand("verify", "check a backdoor witness or an assignment");
  verify->add_option("--instance", ve.instance, "instance file, or - for stdin")->required();
  verify->add_option("--witness", ve.witness, "backdoor witness file");
  verify->add_option("--assignment", ve.assignment, "assignment file");
  verify->add_option("-o,--output", ve.output, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitBadInput;
  }

  try {
    if (*analyze) return run_analyze(an);
    if (*solve) return run_solve(so);
    if (*normalize) return run_normalize(no);
    if (*generate) {
      if (g_ss->parsed()) return run_gen_subset_sum(ge);
      if (g_col->parsed()) return run_gen_graph(ge, true);
      if (g_clq->parsed()) return run_gen_graph(ge, false);
      return run_gen_random(ge);
    }
    if (*verify) return run_verify(ve);
  } catch (const NoBackdoorError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNoBackdoor;
  } catch (const LimitError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitLimit;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  }
  return 0;
}
