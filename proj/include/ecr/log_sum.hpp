#pragma once

#include <cmath>
#include <limits>

namespace ecr {

/// Accumulates a sum of positive terms given by their base-2 logarithms.
///
/// Terms are kept relative to the largest exponent seen so far and summed
/// with Kahan compensation, so sums spanning thousands of binary orders of
/// magnitude (counts near 2^4096 times eigenvalues near 2^-4096) stay exact
/// to a few ulps.
class Log2Sum {
 public:
  void add(double log2_term) {
    if (std::isinf(log2_term) && log2_term < 0) return;
    if (empty()) {
      scale_ = log2_term;
      sum_ = 1.0;
      carry_ = 0.0;
      return;
    }
    if (log2_term > scale_) {
      const double factor = std::exp2(scale_ - log2_term);
      sum_ *= factor;
      carry_ *= factor;
      scale_ = log2_term;
    }
    const double y = std::exp2(log2_term - scale_) - carry_;
    const double t = sum_ + y;
    carry_ = (t - sum_) - y;
    sum_ = t;
  }

  bool empty() const noexcept { return std::isinf(scale_); }

  /// log2 of the accumulated sum; -inf when nothing was added.
  double log2() const {
    if (empty()) return -std::numeric_limits<double>::infinity();
    return scale_ + std::log2(sum_);
  }

  double value() const { return std::exp2(log2()); }

 private:
  double scale_ = -std::numeric_limits<double>::infinity();
  double sum_ = 0.0;
  double carry_ = 0.0;
};

/// log2(2^a + 2^b) without overflow.
inline double log2_add(double a, double b) {
  Log2Sum s;
  s.add(a);
  s.add(b);
  return s.log2();
}

}  // namespace ecr
