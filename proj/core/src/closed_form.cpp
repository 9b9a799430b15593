#include "prefatt/closed_form.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "prefatt/combinatorics.hpp"

namespace prefatt {

namespace {

constexpr double kLn2 = 0.6931471805599453094172321214581766;

void require_coordinates(const char* who, unsigned n, unsigned k) {
  if (k < 1 || k > n)
    throw std::invalid_argument(std::string(who) + ": requires 1 <= k <= n");
}

double log_bracket(unsigned n, unsigned k) {
  if (k == n || k == 1) return 0.0;  // empty sum, or the (k-1) factor is 0
  std::vector<double> logs;
  logs.reserve(n - k);
  for (unsigned j = 0; j + k + 1 <= n; ++j) {
    logs.push_back(-2.0 * (j + 1) * kLn2 + log_factorial(k + 2 * j).log_value() -
                   log_factorial(j + 1).log_value() -
                   log_factorial(k + j).log_value());
  }
  const LogFloat sum = log_sum_exp_pairwise(logs);
  // bracket = 1 + (k-1) * sum
  return LogFloat::log_sum_exp(0.0, std::log(double(k) - 1.0) + sum.log_value());
}

}  // namespace

namespace detail {

Rational eq_bracket(unsigned n, unsigned k) {
  Rational sum(0);
  if (k > 1) {
    for (unsigned j = 0; j + k + 1 <= n; ++j) sum += sum_term(k, j);
  }
  return Rational(1) + Rational(long(k) - 1) * sum;
}

Rational a_closed_general_branch(unsigned n, unsigned k) {
  return mul_pow2(eq_bracket(n, k), 2ul * (n - k));
}

}  // namespace detail

ClosedFormValue p_first_degree_one(unsigned n) {
  if (n < 1) throw std::invalid_argument("p_first_degree_one: requires n >= 1");
  BigInt num = factorial(n - 1);
  mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), n - 1);
  return {n, 1, 1, make_rational(num, odd_product(n)), std::nullopt};
}

ClosedFormValue p_first_degree_max(unsigned n) {
  if (n < 1) throw std::invalid_argument("p_first_degree_max: requires n >= 1");
  return {n, n, 1, make_rational(factorial(n - 1), odd_product(n)),
          std::nullopt};
}

ClosedFormValue a_closed(unsigned n, unsigned k) {
  require_coordinates("a_closed", n, k);
  if (k == n) return {n, k, 1, Rational(1), std::nullopt};
  return {n, k, 1, detail::a_closed_general_branch(n, k), std::nullopt};
}

ClosedFormValue p_closed(unsigned n, unsigned k) {
  require_coordinates("p_closed", n, k);
  // prefactor n!(n-1)!/(2n)! times 2^{2n-k}
  Rational value = make_rational(factorial(n) * factorial(n - 1), factorial(2 * n));
  value = mul_pow2(value, 2ul * n - k);
  value *= detail::eq_bracket(n, k);
  return {n, k, 1, std::move(value), std::nullopt};
}

ClosedFormValue p_closed_float(unsigned n, unsigned k) {
  require_coordinates("p_closed_float", n, k);
  const double log_prefactor = log_factorial(n).log_value() +
                               log_factorial(n - 1).log_value() -
                               log_factorial(2 * n).log_value() +
                               (2.0 * n - k) * kLn2;
  const LogFloat value = LogFloat::from_log(log_prefactor + log_bracket(n, k));
  return {n, k, 1, std::nullopt, value};
}

}  // namespace prefatt
