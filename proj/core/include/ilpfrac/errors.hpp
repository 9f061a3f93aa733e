#pragma once

#include <stdexcept>
#include <string>

namespace ilpfrac {

// malformed input files, unknown names, inconsistent bounds
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// a configured search budget (enumeration nodes, dp keys, oracle space) was exceeded
struct LimitError : std::runtime_error {
  explicit LimitError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ilpfrac
