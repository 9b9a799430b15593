// Exact arithmetic scalars used throughout: arbitrary-precision integers and
// canonical rationals, backed by GMP.
#pragma once

#include <gmpxx.h>

#include <cmath>
#include <stdexcept>
#include <string>

namespace prefatt {

// Arbitrary-precision signed integer. Arithmetic never overflows.
using BigInt = mpz_class;

// Arbitrary-precision rational. Every value handed out by this library is
// canonical: lowest terms, positive denominator. Equality on canonical values
// is value equality.
using Rational = mpq_class;

/// Builds a canonical rational from any numerator/denominator pair.
/// Throws std::invalid_argument on a zero denominator.
inline Rational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw std::invalid_argument("make_rational: zero denominator");
  Rational q;
  q.get_num() = num;
  q.get_den() = den;
  q.canonicalize();  // reduces and fixes the sign of the denominator
  return q;
}

inline Rational make_rational(long num, long den) {
  return make_rational(BigInt(num), BigInt(den));
}

/// 2^exponent as an exact integer.
inline BigInt pow2(unsigned long exponent) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, exponent);
  return r;
}

/// q * 2^exponent, canonical.
inline Rational mul_pow2(const Rational& q, unsigned long exponent) {
  Rational r;
  mpq_mul_2exp(r.get_mpq_t(), q.get_mpq_t(), exponent);
  return r;
}

/// q / 2^exponent, canonical.
inline Rational div_pow2(const Rational& q, unsigned long exponent) {
  Rational r;
  mpq_div_2exp(r.get_mpq_t(), q.get_mpq_t(), exponent);
  return r;
}

inline std::string to_string(const BigInt& v) { return v.get_str(10); }

/// Serializes as "numerator/denominator" in decimal digits, no precision loss.
inline std::string to_string(const Rational& q) {
  return q.get_num().get_str(10) + "/" + q.get_den().get_str(10);
}

/// Nearest-double approximation, display and statistics only.
inline double to_double(const Rational& q) { return q.get_d(); }

/// Natural log of a positive big integer, full double precision.
/// Splits into mantissa and binary exponent so the magnitude never overflows.
inline double log_of(const BigInt& v) {
  if (v <= 0) throw std::domain_error("log_of: nonpositive argument");
  signed long exp2 = 0;
  const double mant = mpz_get_d_2exp(&exp2, v.get_mpz_t());
  return std::log(mant) + static_cast<double>(exp2) * 0.6931471805599453094172321214581766;
}

}  // namespace prefatt
