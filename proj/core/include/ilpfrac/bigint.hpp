#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>

namespace ilpfrac {

// all model arithmetic runs on arbitrary-precision integers; cpp_int keeps
// small values inline so desk-scale loops stay cheap
using Int = boost::multiprecision::cpp_int;

// bounds: nullopt means unbounded on that side
using MaybeInt = std::optional<Int>;

inline Int abs_int(const Int& v) { return v < 0 ? Int(-v) : v; }

// JSON carries integers as plain numbers only while they are exactly
// representable as doubles; anything bigger travels as a decimal string
inline const Int json_number_limit = Int(1) << 53;

inline bool fits_json_number(const Int& v) {
  return abs_int(v) < json_number_limit;
}

inline std::string int_to_string(const Int& v) { return v.str(); }

}  // namespace ilpfrac
