// Log-space representation of nonnegative quantities, for the floating path
// where factorials overflow machine doubles.
#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

namespace prefatt {

/// A nonnegative quantity stored as its natural log. Exact zero is kept
/// out-of-band in a flag instead of as -infinity, so no infinity arithmetic
/// ever happens. Multiplication and division are log add/subtract; addition
/// goes through the stable log-sum-exp form and stays finite whenever both
/// operands are.
class LogFloat {
 public:
  LogFloat() : log_(0.0), zero_(true) {}

  static LogFloat zero() { return LogFloat(); }
  static LogFloat one() { return from_log(0.0); }

  static LogFloat from_log(double log_value) {
    LogFloat v;
    v.log_ = log_value;
    v.zero_ = false;
    return v;
  }

  /// From a plain nonnegative value. Throws on negative input.
  static LogFloat from_value(double value) {
    if (value < 0.0) throw std::domain_error("LogFloat: negative value");
    if (value == 0.0) return zero();
    return from_log(std::log(value));
  }

  bool is_zero() const { return zero_; }

  /// The stored natural log. Only valid for nonzero quantities.
  double log_value() const {
    if (zero_) throw std::domain_error("LogFloat: log of exact zero");
    return log_;
  }

  /// Back to linear space; may overflow to inf for huge logs, underflow to 0.
  double value() const { return zero_ ? 0.0 : std::exp(log_); }

  friend LogFloat operator*(const LogFloat& a, const LogFloat& b) {
    if (a.zero_ || b.zero_) return zero();
    return from_log(a.log_ + b.log_);
  }

  friend LogFloat operator/(const LogFloat& a, const LogFloat& b) {
    if (b.zero_) throw std::domain_error("LogFloat: division by exact zero");
    if (a.zero_) return zero();
    return from_log(a.log_ - b.log_);
  }

  friend LogFloat operator+(const LogFloat& a, const LogFloat& b) {
    if (a.zero_) return b;
    if (b.zero_) return a;
    return from_log(log_sum_exp(a.log_, b.log_));
  }

  LogFloat& operator*=(const LogFloat& o) { return *this = *this * o; }
  LogFloat& operator/=(const LogFloat& o) { return *this = *this / o; }
  LogFloat& operator+=(const LogFloat& o) { return *this = *this + o; }

  /// log(e^a + e^b) without overflow.
  static double log_sum_exp(double a, double b) {
    const double hi = a > b ? a : b;
    const double lo = a > b ? b : a;
    return hi + std::log1p(std::exp(lo - hi));
  }

 private:
  double log_;
  bool zero_;
};

/// Pairwise (tree) log-sum-exp over a span of log values. Error growth is
/// O(log n) in the number of summands instead of O(n) for a running sum.
/// Empty input means an empty sum, i.e. exact zero.
inline LogFloat log_sum_exp_pairwise(std::span<const double> logs) {
  if (logs.empty()) return LogFloat::zero();
  if (logs.size() == 1) return LogFloat::from_log(logs[0]);
  const std::size_t half = logs.size() / 2;
  const LogFloat left = log_sum_exp_pairwise(logs.subspan(0, half));
  const LogFloat right = log_sum_exp_pairwise(logs.subspan(half));
  return left + right;
}

}  // namespace prefatt
