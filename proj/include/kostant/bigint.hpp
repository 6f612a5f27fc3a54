#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace kostant {

/// Arbitrary-precision integer used for chip counts and combinatorial counts.
using BigInt = boost::multiprecision::cpp_int;

inline std::string to_string(const BigInt& x) { return x.str(); }

}  // namespace kostant
