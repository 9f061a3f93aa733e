#include "ilpfrac/errors.hpp"
#include "ilpfrac/model.hpp"

#include "doctest.h"
#include "json.hpp"

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace ilpfrac;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

std::string fixture(const std::string& name) {
  return slurp(std::string(ILPFRAC_TEST_DATA) + "/" + name);
}

}  // namespace

TEST_CASE("figure1 fixture parses with the expected shape") {
  Instance inst = parse_instance(fixture("figure1.json"));
  CHECK(inst.vars.size() == 8);
  CHECK(inst.cons.size() == 7);
  CHECK(inst.var_index("y") == 7);
  CHECK(inst.var_index("x7") == 6);
  CHECK(inst.var_index("nope") == -1);
  CHECK(inst.vars[0].lower == Int(0));
  CHECK_FALSE(inst.vars[0].upper.has_value());
  CHECK(inst.vars[3].objective == Int(4));
  CHECK(inst.cons[0].name == "total");
  CHECK(inst.cons[0].terms.size() == 7);
  CHECK(inst.cons[2].rhs == Int(9));
  CHECK(inst.coeff(2, inst.var_index("x2")) == Int(2));
  CHECK(inst.coeff(2, inst.var_index("x3")) == Int(0));
  CHECK(inst.max_abs_coeff() == Int(6));
  CHECK(inst.max_abs_rhs() == Int(41));
  CHECK(inst.nonzero_count() == 19);
}

TEST_CASE("figure1 evaluate") {
  Instance inst = parse_instance(fixture("figure1.json"));
  // x1..x7 then y, variable declaration order
  std::vector<Int> good = {1, 2, 3, 4, 5, 6, 11, 5};
  EvalResult r = evaluate(inst, good);
  CHECK(r.feasible);
  CHECK(r.objective == Int(168));

  std::vector<Int> bad = good;
  bad[1] = 2;
  bad[7] = 6;  // 2*2 + 6 = 10 != 9
  CHECK_FALSE(evaluate(inst, bad).feasible);

  std::vector<Int> below = good;
  below[0] = -1;
  CHECK_FALSE(evaluate(inst, below).feasible);

  CHECK_THROWS_AS(evaluate(inst, {Int(1)}), std::invalid_argument);
}

TEST_CASE("evaluate is pure") {
  Instance inst = parse_instance(fixture("figure1.json"));
  std::vector<Int> x = {1, 2, 3, 4, 5, 6, 11, 5};
  EvalResult a = evaluate(inst, x);
  EvalResult b = evaluate(inst, x);
  CHECK(a.feasible == b.feasible);
  CHECK(a.objective == b.objective);
}

TEST_CASE("serialize then parse is the identity on the model") {
  Instance inst = parse_instance(fixture("figure1.json"));
  std::string once = serialize_instance(inst);
  Instance again = parse_instance(once);
  CHECK(inst == again);
  CHECK(serialize_instance(again) == once);
}

TEST_CASE("inequalities get slack variables") {
  std::string text = R"({
    "variables": [{"name": "a", "lower": 0, "upper": 5, "objective": 1}],
    "constraints": [
      {"name": "le", "coeffs": {"a": 2}, "relation": "<=", "rhs": 7},
      {"name": "ge", "coeffs": {"a": 1}, "relation": ">=", "rhs": 1}
    ]
  })";
  Instance inst = parse_instance(text);
  REQUIRE(inst.vars.size() == 3);
  CHECK(inst.vars[1].name == "_slack_0");
  CHECK(inst.vars[2].name == "_slack_1");
  for (int v : {1, 2}) {
    CHECK(inst.vars[v].lower == Int(0));
    CHECK_FALSE(inst.vars[v].upper.has_value());
    CHECK(inst.vars[v].objective == Int(0));
  }
  // a*2 + s = 7 and a*1 - s' = 1
  CHECK(inst.coeff(0, 1) == Int(1));
  CHECK(inst.coeff(1, 2) == Int(-1));
  // 2*3 + 1 = 7, 3 - 2 = 1
  CHECK(evaluate(inst, {3, 1, 2}).feasible);
  CHECK_FALSE(evaluate(inst, {3, 1, 3}).feasible);

  // slack variables survive a round trip as plain variables
  Instance again = parse_instance(serialize_instance(inst));
  CHECK(again == inst);
}

TEST_CASE("parser rejects malformed input") {
  CHECK_THROWS_AS(parse_instance("not json"), ParseError);
  CHECK_THROWS_AS(parse_instance("[]"), ParseError);
  // missing constraints key
  CHECK_THROWS_AS(parse_instance(R"({"variables": []})"), ParseError);
  // duplicate variable name
  CHECK_THROWS_AS(parse_instance(R"({
    "variables": [{"name": "a"}, {"name": "a"}],
    "constraints": []
  })"),
                  ParseError);
  // unknown variable in coeffs
  CHECK_THROWS_AS(parse_instance(R"({
    "variables": [{"name": "a"}],
    "constraints": [{"name": "c", "coeffs": {"b": 1}, "relation": "=", "rhs": 0}]
  })"),
                  ParseError);
  // crossed bounds
  CHECK_THROWS_AS(parse_instance(R"({
    "variables": [{"name": "a", "lower": 3, "upper": 1}],
    "constraints": []
  })"),
                  ParseError);
  // fractional coefficient
  CHECK_THROWS_AS(parse_instance(R"({
    "variables": [{"name": "a"}],
    "constraints": [{"name": "c", "coeffs": {"a": 1.5}, "relation": "=", "rhs": 0}]
  })"),
                  ParseError);
  // bad relation
  CHECK_THROWS_AS(parse_instance(R"({
    "variables": [{"name": "a"}],
    "constraints": [{"name": "c", "coeffs": {"a": 1}, "relation": "<", "rhs": 0}]
  })"),
                  ParseError);
  // duplicate constraint name
  CHECK_THROWS_AS(parse_instance(R"({
    "variables": [{"name": "a"}],
    "constraints": [
      {"name": "c", "coeffs": {"a": 1}, "relation": "=", "rhs": 0},
      {"name": "c", "coeffs": {"a": 2}, "relation": "=", "rhs": 0}
    ]
  })"),
                  ParseError);
}

TEST_CASE("defaults and nulls") {
  std::string text = R"({
    "variables": [{"name": "a"}, {"name": "b", "lower": null, "upper": 3}],
    "constraints": []
  })";
  Instance inst = parse_instance(text);
  CHECK_FALSE(inst.vars[0].lower.has_value());
  CHECK_FALSE(inst.vars[0].upper.has_value());
  CHECK(inst.vars[0].objective == Int(0));
  CHECK_FALSE(inst.vars[1].lower.has_value());
  CHECK(inst.vars[1].upper == Int(3));
}

TEST_CASE("zero coefficients are dropped") {
  std::string text = R"({
    "variables": [{"name": "a"}, {"name": "b"}],
    "constraints": [{"name": "c", "coeffs": {"a": 0, "b": 2}, "relation": "=", "rhs": 4}]
  })";
  Instance inst = parse_instance(text);
  CHECK(inst.cons[0].terms.size() == 1);
  CHECK(inst.nonzero_count() == 1);
}

TEST_CASE("big integers travel as decimal strings") {
  // 2^60 is too large for a JSON number under the 2^53 rule
  std::string big = "1152921504606846976";
  std::string text = R"({
    "variables": [{"name": "a", "lower": 0, "upper": ")" +
                     big + R"(", "objective": 1}],
    "constraints": [{"name": "c", "coeffs": {"a": 1}, "relation": "=", "rhs": ")" +
                     big + R"("}]
  })";
  Instance inst = parse_instance(text);
  Int want("1152921504606846976");
  CHECK(inst.vars[0].upper == want);
  CHECK(inst.cons[0].rhs == want);

  std::string out = serialize_instance(inst);
  CHECK(out.find('"' + big + '"') != std::string::npos);
  CHECK(parse_instance(out) == inst);

  // a literal too wide for 64-bit integers arrives as a lossy double and is
  // rejected; string form is required
  std::string rejected = R"({
    "variables": [{"name": "a", "lower": 0, "upper": 36893488147419103232, "objective": 1}],
    "constraints": []
  })";
  CHECK_THROWS_AS(parse_instance(rejected), ParseError);
}

TEST_CASE("small integers serialize as JSON numbers") {
  Instance inst = parse_instance(fixture("figure1.json"));
  auto j = nlohmann::json::parse(serialize_instance(inst));
  CHECK(j["constraints"][0]["rhs"].is_number_integer());
  CHECK(j["variables"][0]["lower"].is_number_integer());
  CHECK(j["variables"][0]["upper"].is_null());
}

TEST_CASE("add_variable and add_constraint enforce the invariants") {
  Instance inst;
  int a = add_variable(inst, "a", Int(0), Int(4), Int(1));
  int b = add_variable(inst, "b", std::nullopt, std::nullopt, Int(0));
  CHECK(a == 0);
  CHECK(b == 1);
  CHECK_THROWS_AS(add_variable(inst, "a", Int(0), Int(1), Int(0)), ParseError);
  CHECK_THROWS_AS(add_variable(inst, "c", Int(2), Int(1), Int(0)), ParseError);

  int c = add_constraint(inst, "row", {{a, Int(2)}, {b, Int(-1)}}, Int(3));
  CHECK(c == 0);
  CHECK_THROWS_AS(add_constraint(inst, "row", {{a, Int(1)}}, Int(0)), ParseError);
  // duplicate variable in one row
  CHECK_THROWS_AS(add_constraint(inst, "row2", {{a, Int(1)}, {a, Int(1)}}, Int(0)), ParseError);
  // zero coefficients are dropped, matching the parser
  int d = add_constraint(inst, "row3", {{a, Int(0)}, {b, Int(1)}}, Int(0));
  CHECK(inst.cons[size_t(d)].terms.size() == 1);
  // bad index
  CHECK_THROWS_AS(add_constraint(inst, "row4", {{5, Int(1)}}, Int(0)), ParseError);
}

TEST_CASE("empty instance is valid") {
  Instance inst = parse_instance(R"({"variables": [], "constraints": []})");
  CHECK(inst.vars.empty());
  CHECK(inst.cons.empty());
  EvalResult r = evaluate(inst, {});
  CHECK(r.feasible);
  CHECK(r.objective == Int(0));
  CHECK(parse_instance(serialize_instance(inst)) == inst);
}
