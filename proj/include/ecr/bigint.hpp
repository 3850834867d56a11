#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace ecr {

/// Exact unbounded integer used for spectrum counts and EPR dimensions.
using BigInt = boost::multiprecision::cpp_int;

/// log2 of a non-negative integer from its bit length and top 63 bits.
/// Returns -inf for zero.
inline double log2_exact(const BigInt& x) {
  if (x.is_zero()) return -std::numeric_limits<double>::infinity();
  const auto top_bit = static_cast<long>(boost::multiprecision::msb(x));
  if (top_bit < 63) return std::log2(static_cast<double>(static_cast<std::uint64_t>(x)));
  const long shift = top_bit - 62;
  const auto mantissa = static_cast<std::uint64_t>(x >> shift);
  return std::log2(static_cast<double>(mantissa)) + static_cast<double>(shift);
}

/// 2^bits as an exact integer.
inline BigInt pow2(std::uint64_t bits) {
  BigInt one = 1;
  return one << bits;
}

/// Nearest double; +inf when the value exceeds double range.
inline double to_double(const BigInt& x) {
  if (x.is_zero()) return 0.0;
  const double lg = log2_exact(x);
  if (lg >= 1024.0) return std::numeric_limits<double>::infinity();
  return x.convert_to<double>();
}

inline std::string to_string(const BigInt& x) { return x.str(); }

}  // namespace ecr
