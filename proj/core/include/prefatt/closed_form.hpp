// Direct evaluation of the analytic degree laws: the boundary formulas, the
// scaled-coefficient closed form, and the explicit p_{n,k}, in exact rational
// and in log-space floating arithmetic.
#pragma once

#include <optional>

#include "prefatt/exact.hpp"
#include "prefatt/logfloat.hpp"

namespace prefatt {

/// One evaluated closed-form quantity, tagged with its coordinates so a
/// mismatch can be reported without ambient context. Either or both of the
/// exact and floating values may be populated.
struct ClosedFormValue {
  unsigned n = 0;
  unsigned k = 0;
  unsigned m = 1;  // closed forms describe the first node
  std::optional<Rational> exact;
  std::optional<LogFloat> approx;
};

/// P(first node has degree 1 at time n), closed form:
///   p_{n,1} = 2^{n-1} (n-1)! / odd_product(n).
ClosedFormValue p_first_degree_one(unsigned n);

/// P(first node has the maximal degree n at time n), closed form:
///   p_{n,n} = (n-1)! / odd_product(n).
ClosedFormValue p_first_degree_max(unsigned n);

/// Scaled coefficient a_{n,k}, closed form:
///   a_{n,n} = 1,
///   a_{n,k} = 2^{2(n-k)} [1 + (k-1) sum_{j=0}^{n-k-1} sum_term(k, j)].
/// Throws std::invalid_argument unless 1 <= k <= n.
ClosedFormValue a_closed(unsigned n, unsigned k);

/// Degree probability p_{n,k} for the first node, explicit formula:
///   p_{n,k} = n!(n-1)!/(2n)! * 2^{2n-k} * [same bracket as a_closed].
/// Throws std::invalid_argument unless 1 <= k <= n.
ClosedFormValue p_closed(unsigned n, unsigned k);

/// Log-space floating evaluation of the same p_{n,k}. The bracket summands
/// are accumulated with pairwise log-sum-exp; no overflow or underflow for
/// n up to 1e6 and the result stays in (0, 1).
/// Throws std::invalid_argument unless 1 <= k <= n.
ClosedFormValue p_closed_float(unsigned n, unsigned k);

namespace detail {

/// The bracket 1 + (k-1) sum_{j=0}^{n-k-1} sum_term(k,j), summed left to
/// right in exact arithmetic. Valid for k <= n; at k = n the sum is empty and
/// the bracket is exactly 1.
Rational eq_bracket(unsigned n, unsigned k);

/// The general closed-form branch 2^{2(n-k)} * bracket without the k = n
/// special case, used to check that the empty-sum convention agrees with the
/// separately stated boundary value 1.
Rational a_closed_general_branch(unsigned n, unsigned k);

}  // namespace detail

}  // namespace prefatt
