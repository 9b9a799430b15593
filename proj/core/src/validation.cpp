#include "prefatt/validation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "prefatt/closed_form.hpp"
#include "prefatt/combinatorics.hpp"

namespace prefatt {

namespace {

void require_k_at_least_2(const char* who, unsigned k) {
  if (k < 2) throw std::invalid_argument(std::string(who) + ": requires k >= 2");
}

}  // namespace

EquivalenceReport check_equivalence(unsigned n_max,
                                    const FaultInjection& fault) {
  if (n_max < 1)
    throw std::invalid_argument("check_equivalence: requires n_max >= 1");

  warm_factorials(2 * n_max);
  const DistributionTable probs = first_node_table(n_max);
  const ScaledTable scaled = scaled_table(n_max);

  EquivalenceReport report;
  report.n_max = n_max;
  for (unsigned n = 1; n <= n_max; ++n) {
    for (unsigned k = 1; k <= n; ++k) {
      const bool inject = (fault.n == n && fault.k == k);

      Rational a_formula = *a_closed(n, k).exact;
      if (inject) a_formula += 1;
      if (a_formula != scaled.at(n, k)) {
        report.mismatches.push_back(
            {MismatchFamily::scaled, n, k, scaled.at(n, k), a_formula});
      }

      Rational p_formula = *p_closed(n, k).exact;
      if (inject) p_formula += 1;
      if (p_formula != probs.at(n).prob(k)) {
        report.mismatches.push_back(
            {MismatchFamily::probability, n, k, probs.at(n).prob(k), p_formula});
      }
    }
  }
  report.passed = report.mismatches.empty();
  return report;
}

Rational induction_identity_lhs(unsigned k, unsigned r) {
  require_k_at_least_2("induction_identity_lhs", k);
  Rational sum(0);
  for (unsigned j = 0; j <= r; ++j) {
    // 2(k-2)(k-1+2j)!/(k-1+j)!  -  (k-1)(k+2j)!/(k+j)!
    Rational inner =
        Rational(2L * (long(k) - 2)) *
            make_rational(factorial(k - 1 + 2 * j), factorial(k - 1 + j)) -
        Rational(long(k) - 1) *
            make_rational(factorial(k + 2 * j), factorial(k + j));
    sum += div_pow2(inner / Rational(factorial(j + 1)), 2ul * (j + 1));
  }
  return sum;
}

Rational induction_identity_rhs(unsigned k, unsigned r) {
  require_k_at_least_2("induction_identity_rhs", k);
  const Rational lead = make_rational(
      factorial(k + 1 + 2 * r), factorial(r + 1) * factorial(k + r));
  return div_pow2(lead, 2ul * (r + 1)) - 1;
}

bool check_induction_identity(unsigned k, unsigned r) {
  return induction_identity_lhs(k, r) == induction_identity_rhs(k, r);
}

BigInt step_identity_lhs(unsigned k, unsigned r) {
  require_k_at_least_2("step_identity_lhs", k);
  const BigInt kk(k), rr(r);
  return 4 * (rr + 2) * (kk + rr + 1) + 2 * (kk - 2) * (kk + rr + 1) -
         (kk - 1) * (kk + 2 + 2 * rr);
}

BigInt step_identity_rhs(unsigned k, unsigned r) {
  require_k_at_least_2("step_identity_rhs", k);
  const BigInt kk(k), rr(r);
  return (kk + 3 + 2 * rr) * (kk + 2 + 2 * rr);
}

bool check_step_identity(unsigned k, unsigned r) {
  return step_identity_lhs(k, r) == step_identity_rhs(k, r);
}

namespace {

void require_same_coordinates(const DegreeDistribution& exact,
                              const EmpiricalDistribution& empirical) {
  if (exact.birth_index() != empirical.birth_index ||
      exact.time() != empirical.horizon)
    throw std::invalid_argument("distribution coordinates do not match");
}

}  // namespace

double tv_distance(const DegreeDistribution& exact,
                   const EmpiricalDistribution& empirical) {
  require_same_coordinates(exact, empirical);
  const double trials = static_cast<double>(empirical.trials);
  double sum = 0.0;
  const unsigned support =
      std::max<unsigned>(exact.max_degree(),
                         static_cast<unsigned>(empirical.counts.size()));
  for (unsigned k = 1; k <= support; ++k) {
    const double p = to_double(exact.prob(k));
    const double q = static_cast<double>(empirical.count(k)) / trials;
    sum += std::abs(p - q);
  }
  return 0.5 * sum;
}

StatReport chi_square(const DegreeDistribution& exact,
                      const EmpiricalDistribution& empirical,
                      double min_expected, const StatThresholds& thresholds) {
  require_same_coordinates(exact, empirical);
  if (empirical.trials == 0)
    throw std::invalid_argument("chi_square: requires trials > 0");

  const double trials = static_cast<double>(empirical.trials);
  std::vector<double> expected;
  std::vector<double> observed;
  for (unsigned k = 1; k <= exact.max_degree(); ++k) {
    expected.push_back(to_double(exact.prob(k)) * trials);
    observed.push_back(static_cast<double>(empirical.count(k)));
  }
  // Pool from the high-degree tail inward until every cell is testable.
  while (expected.size() > 1 && expected.back() < min_expected) {
    expected[expected.size() - 2] += expected.back();
    observed[observed.size() - 2] += observed.back();
    expected.pop_back();
    observed.pop_back();
  }

  StatReport report;
  report.trials = empirical.trials;
  report.tv_distance = tv_distance(exact, empirical);
  if (expected.size() < 2) {
    report.untestable = true;
    return report;
  }

  double stat = 0.0;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    const double diff = observed[i] - expected[i];
    stat += diff * diff / expected[i];
  }
  report.chi_square_statistic = stat;
  report.degrees_of_freedom = static_cast<unsigned>(expected.size()) - 1;
  report.passed =
      report.tv_distance <= thresholds.tv_max &&
      stat <= chi_square_critical_999(report.degrees_of_freedom);
  return report;
}

double chi_square_critical_999(unsigned degrees_of_freedom) {
  // 0.999 quantiles of the chi-square distribution, df = 1 .. 64.
  static constexpr std::array<double, 64> kQuantiles = {
      10.8275661707, 13.8155105580, 16.2662361962, 18.4668269529,
      20.5150056524, 22.4577444848, 24.3218863479, 26.1244815584,
      27.8771648713, 29.5882984451, 31.2641336202, 32.9094904074,
      34.5281789749, 36.1232736804, 37.6972982184, 39.2523547908,
      40.7902167069, 42.3123963317, 43.8201959645, 45.3147466181,
      46.7970380416, 48.2679422908, 49.7282324664, 51.1785977774,
      52.6196557762, 54.0519623886, 55.4760202057, 56.8922853934,
      58.3011734898, 59.7030643044, 61.0983060811, 62.4872190571,
      63.8700985223, 65.2472174609, 66.6188288437, 67.9851676260,
      69.3464524962, 70.7028874115, 72.0546629520, 73.4019575190,
      74.7449383984, 76.0837627077, 77.4185782413, 78.7495242280,
      80.0767320108, 81.4003256587, 82.7204225191, 84.0371337172,
      85.3505646086, 86.6608151904, 87.9679804756, 89.2721508343,
      90.5734123053, 91.8718468817, 93.1675327722, 94.4605446419,
      95.7509538325, 97.0388285665, 98.3242341347, 99.6072330698,
      100.8878853069, 102.1662483318, 103.4423773199, 104.7163252630};
  if (degrees_of_freedom < 1 || degrees_of_freedom > kQuantiles.size())
    throw std::out_of_range("chi_square_critical_999: df outside [1, 64]");
  return kQuantiles[degrees_of_freedom - 1];
}

EquivalenceReport time_invariance_report(unsigned m, unsigned t_max) {
  if (m < 2)
    throw std::invalid_argument("time_invariance_report: requires m >= 2");

  EquivalenceReport report;
  report.n_max = m + t_max;
  if (t_max == 0) return report;  // empty comparison

  const DistributionTable general = general_node_table(m, m + t_max);
  const DistributionTable first = first_node_table(1 + t_max);
  for (unsigned t = 1; t <= t_max; ++t) {
    for (unsigned k = 1; k <= t + 1; ++k) {
      const Rational& shifted = general.at(m + t).prob(k);
      const Rational& reference = first.at(1 + t).prob(k);
      if (shifted != reference) {
        report.mismatches.push_back(
            {MismatchFamily::time_invariance, m + t, k, shifted, reference});
      }
    }
  }
  report.passed = report.mismatches.empty();
  return report;
}

}  // namespace prefatt
