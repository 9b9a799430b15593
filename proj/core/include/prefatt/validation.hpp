// Executable verification layer: exact equivalence of the recurrence tables
// and the closed forms, the two proof identities as exact checks, and
// statistical comparison of simulation against the exact laws.
#pragma once

#include <cstdint>
#include <vector>

#include "prefatt/exact.hpp"
#include "prefatt/recurrence.hpp"
#include "prefatt/simulator.hpp"

namespace prefatt {

/// Which pair of routes disagreed in a mismatch entry.
enum class MismatchFamily {
  scaled,          // a_{n,k}: recurrence vs closed form
  probability,     // p_{n,k}: recurrence vs closed form
  time_invariance  // p^m_{m+t,k} vs p^1_{1+t,k}
};

struct CellMismatch {
  MismatchFamily family;
  unsigned n = 0;
  unsigned k = 0;
  Rational recurrence_value;
  Rational closed_value;
};

/// Outcome of an exact cell-by-cell comparison. passed holds exactly when
/// the mismatch list is empty.
struct EquivalenceReport {
  unsigned n_max = 0;
  std::vector<CellMismatch> mismatches;
  bool passed = true;
};

/// Test hook: when set, the closed-form value at (n, k) is perturbed by +1
/// before comparison, to exercise the failure path end to end.
struct FaultInjection {
  unsigned n = 0;  // 0 disables the hook
  unsigned k = 0;
};

/// Compares, for all 1 <= k <= n <= n_max, the scaled coefficients from the
/// recurrence against a_closed and the first-node probabilities from the
/// recurrence against p_closed. Exact rational equality, zero tolerance.
/// Mismatches are reported in (family, n, k) order.
EquivalenceReport check_equivalence(unsigned n_max,
                                    const FaultInjection& fault = {});

/// Exactly evaluates both sides of the summed proof identity
///   sum_{j=0}^{r} 2^{-2(j+1)}/(j+1)! [ 2(k-2)(k-1+2j)!/(k-1+j)!
///                                      - (k-1)(k+2j)!/(k+j)! ]
///     = 2^{-2(r+1)} (k+1+2r)!/((r+1)!(k+r)!) - 1
/// as rationals and reports whether they agree. Requires k >= 2.
bool check_induction_identity(unsigned k, unsigned r);

/// The two sides of the identity above, exposed so a failure can be
/// reported with values.
Rational induction_identity_lhs(unsigned k, unsigned r);
Rational induction_identity_rhs(unsigned k, unsigned r);

/// Exactly evaluates both sides of the polynomial identity behind the
/// induction step,
///   4(r+2)(k+r+1) + 2(k-2)(k+r+1) - (k-1)(k+2+2r) = (k+3+2r)(k+2+2r),
/// over exact integers. Requires k >= 2.
bool check_step_identity(unsigned k, unsigned r);

BigInt step_identity_lhs(unsigned k, unsigned r);
BigInt step_identity_rhs(unsigned k, unsigned r);

/// Total variation distance (1/2) sum_k |p(k) - counts(k)/trials| between an
/// exact law and empirical counts at the same (m, n) coordinates.
/// Throws std::invalid_argument on a coordinate mismatch.
double tv_distance(const DegreeDistribution& exact,
                   const EmpiricalDistribution& empirical);

/// Pass thresholds for the statistical comparison: total variation at most
/// tv_max and the chi-square statistic below the 0.999 quantile at the
/// pooled degrees of freedom.
struct StatThresholds {
  double tv_max = 0.005;
};

/// Result of the goodness-of-fit comparison. When the support pools down to
/// a single cell the test is untestable: neither passed nor failed.
struct StatReport {
  double tv_distance = 0.0;
  double chi_square_statistic = 0.0;
  unsigned degrees_of_freedom = 0;
  std::uint64_t trials = 0;
  bool untestable = false;
  bool passed = false;
};

/// Pearson chi-square against the exact law. Tail cells are pooled (highest
/// degree first) until every expected count is at least min_expected.
/// Degrees of freedom = pooled support size - 1.
StatReport chi_square(const DegreeDistribution& exact,
                      const EmpiricalDistribution& empirical,
                      double min_expected = 5.0,
                      const StatThresholds& thresholds = {});

/// 0.999 quantile of the chi-square law, embedded table for df in [1, 64].
double chi_square_critical_999(unsigned degrees_of_freedom);

/// Compares the general-node law p^m_{m+t, .} against the first-node law
/// p^1_{1+t, .} for t in [1, t_max], exactly, and reports every differing
/// cell (n in the report is the absolute time m+t). Descriptive only: the
/// rows genuinely differ because the update coefficients depend on absolute
/// time, and no pass/fail judgment is attached. t_max = 0 gives an empty
/// report. Requires m >= 2.
EquivalenceReport time_invariance_report(unsigned m, unsigned t_max);

}  // namespace prefatt
