#pragma once

#include "ilpfrac/bigint.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace ilpfrac {

// equation-form integer program: maximize objective*x subject to Ax = b and
// lower <= x <= upper, x integral. input inequalities are turned into
// equations with fresh slack variables at parse time.

struct Variable {
  std::string name;
  MaybeInt lower;
  MaybeInt upper;
  Int objective = 0;

  bool operator==(const Variable&) const = default;
};

struct Term {
  int var = -1;  // index into Instance::vars
  Int coeff;     // always nonzero

  bool operator==(const Term&) const = default;
};

struct Constraint {
  std::string name;
  std::vector<Term> terms;  // declaration order, unique vars
  Int rhs;

  bool operator==(const Constraint&) const = default;
};

struct Instance {
  std::vector<Variable> vars;
  std::vector<Constraint> cons;

  int var_index(std::string_view name) const;
  // coefficient of variable v in constraint c, zero when absent
  Int coeff(int c, int v) const;
  Int max_abs_coeff() const;  // c_A
  Int max_abs_rhs() const;    // c_b
  long long nonzero_count() const;

  bool operator==(const Instance&) const = default;
};

struct EvalResult {
  bool feasible = false;
  Int objective;  // objective*x, reported for any complete assignment
};

// checks bounds and every equation for a full assignment (one value per variable)
EvalResult evaluate(const Instance& inst, const std::vector<Int>& x);

// JSON instance format, see README. throws ParseError on malformed input.
Instance parse_instance(const std::string& json_text);
std::string serialize_instance(const Instance& inst);

// helper shared by generators: add a variable/constraint, enforcing name rules
int add_variable(Instance& inst, std::string name, MaybeInt lower, MaybeInt upper, Int objective);
int add_constraint(Instance& inst, std::string name, std::vector<Term> terms, Int rhs);

}  // namespace ilpfrac
