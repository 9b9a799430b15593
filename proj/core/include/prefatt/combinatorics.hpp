// Factorial-family quantities, exact and in log space. Everything here is
// memoized per process and safe to read from parallel callers.
#pragma once

#include "prefatt/exact.hpp"
#include "prefatt/logfloat.hpp"

namespace prefatt {

/// n!, exact. Memoized; the reference stays valid for the process lifetime.
const BigInt& factorial(unsigned n);

/// prod_{i=1}^{n} (2i-1), exact, computed as a direct product (n = 0 gives the
/// empty product 1). The equivalent form (2n)!/(2^n n!) is deliberately not
/// used here so it can serve as an independent cross-check.
const BigInt& odd_product(unsigned n);

/// The j-th summand of the degree-law bracket:
///   2^{-2(j+1)} * (k+2j)! / ((j+1)! * (k+j)!)
/// Requires k >= 1.
Rational sum_term(unsigned k, unsigned j);

/// log(n!). Exact table values for n <= 20, log-gamma beyond that.
LogFloat log_factorial(unsigned n);

/// Pre-populates the factorial and odd-product caches up to n, so later
/// parallel readers never contend on cache growth.
void warm_factorials(unsigned n);

}  // namespace prefatt
