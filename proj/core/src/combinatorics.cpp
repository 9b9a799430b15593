#include "prefatt/combinatorics.hpp"

#include <array>
#include <cmath>
#include <deque>
#include <mutex>
#include <shared_mutex>

namespace prefatt {
namespace {

// Growable memo table. std::deque keeps element addresses stable across
// growth, so references handed out earlier survive later appends. Readers
// hold the shared lock only while indexing; the element itself never moves.
class ProductCache {
 public:
  // term(i) is the factor appended at index i (i >= 1); index 0 holds 1.
  template <class Term>
  const BigInt& get(unsigned n, Term term) {
    {
      std::shared_lock lock(mutex_);
      if (n < values_.size()) return values_[n];
    }
    std::unique_lock lock(mutex_);
    while (values_.size() <= n) {
      const unsigned long i = values_.size();
      values_.push_back(values_.back() * term(i));
    }
    return values_[n];
  }

 private:
  std::shared_mutex mutex_;
  std::deque<BigInt> values_{BigInt(1)};
};

ProductCache& factorial_cache() {
  static ProductCache cache;
  return cache;
}

ProductCache& odd_product_cache() {
  static ProductCache cache;
  return cache;
}

double lgamma_threadsafe(double x) {
#ifdef __GLIBC__
  int sign = 0;
  return ::lgamma_r(x, &sign);
#else
  return std::lgamma(x);
#endif
}

}  // namespace

const BigInt& factorial(unsigned n) {
  return factorial_cache().get(n, [](unsigned long i) { return i; });
}

const BigInt& odd_product(unsigned n) {
  return odd_product_cache().get(n, [](unsigned long i) { return 2 * i - 1; });
}

Rational sum_term(unsigned k, unsigned j) {
  if (k < 1) throw std::invalid_argument("sum_term: requires k >= 1");
  BigInt den = factorial(j + 1) * factorial(k + j);
  mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), 2ul * (j + 1));
  return make_rational(factorial(k + 2 * j), den);
}

LogFloat log_factorial(unsigned n) {
  // 20! is the largest factorial that fits a 64-bit integer; the double
  // conversion and log are then correctly rounded.
  static const auto small = [] {
    std::array<double, 21> t{};
    double f = 1.0;
    t[0] = 0.0;
    for (unsigned i = 1; i <= 20; ++i) {
      f *= static_cast<double>(i);
      t[i] = std::log(f);
    }
    return t;
  }();
  if (n <= 20) return LogFloat::from_log(small[n]);
  return LogFloat::from_log(lgamma_threadsafe(static_cast<double>(n) + 1.0));
}

void warm_factorials(unsigned n) {
  factorial(n);
  odd_product(n);
}

}  // namespace prefatt
