#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <stdexcept>
#include <vector>

#include "prefatt/recurrence.hpp"
#include "prefatt/simulator.hpp"
#include "prefatt/validation.hpp"

using namespace prefatt;

TEST_CASE("equivalence holds on a mid-size grid") {
  const EquivalenceReport report = check_equivalence(40);
  CHECK(report.passed);
  CHECK(report.mismatches.empty());
  CHECK(report.n_max == 40);
}

TEST_CASE("equivalence at n_max = 1 passes trivially") {
  CHECK(check_equivalence(1).passed);
  CHECK_THROWS_AS(check_equivalence(0), std::invalid_argument);
}

TEST_CASE("fault injection surfaces exactly the perturbed cell") {
  FaultInjection fault;
  fault.n = 7;
  fault.k = 3;
  const EquivalenceReport report = check_equivalence(10, fault);
  CHECK_FALSE(report.passed);
  REQUIRE(report.mismatches.size() == 2);
  CHECK(report.mismatches[0].family == MismatchFamily::scaled);
  CHECK(report.mismatches[1].family == MismatchFamily::probability);
  for (const CellMismatch& mm : report.mismatches) {
    CHECK(mm.n == 7);
    CHECK(mm.k == 3);
    CHECK(mm.closed_value == mm.recurrence_value + 1);
  }
}

TEST_CASE("summed proof identity holds on a grid and at a pinned point") {
  for (unsigned k = 2; k <= 12; ++k)
    for (unsigned r = 0; r <= 12; ++r) CHECK(check_induction_identity(k, r));

  CHECK(induction_identity_lhs(3, 4) == make_rational(-29, 128));
  CHECK(induction_identity_rhs(3, 4) == make_rational(-29, 128));

  // Base cases r = 0 by hand: k=2 gives 3!/(1!2!)/4 - 1 = -1/4 and k=5
  // gives 6!/(1!5!)/4 - 1 = 1/2.
  CHECK(induction_identity_lhs(2, 0) == make_rational(-1, 4));
  CHECK(induction_identity_rhs(2, 0) == make_rational(-1, 4));
  CHECK(induction_identity_lhs(5, 0) == make_rational(1, 2));
  CHECK(induction_identity_rhs(5, 0) == make_rational(1, 2));
  CHECK_THROWS_AS(check_induction_identity(1, 0), std::invalid_argument);
}

TEST_CASE("step identity holds on a grid and pins its coefficient") {
  for (unsigned k = 2; k <= 20; ++k)
    for (unsigned r = 0; r <= 20; ++r) CHECK(check_step_identity(k, r));

  // At k=2, r=0 both sides are 5*4 = 20. The leading term must contribute
  // 4(r+2)(k+r+1) = 24 here; a 2(r+2) coefficient would give 12 and fail.
  CHECK(step_identity_lhs(2, 0) == 20);
  CHECK(step_identity_rhs(2, 0) == 20);
  CHECK_THROWS_AS(check_step_identity(0, 0), std::invalid_argument);
}

TEST_CASE("tv_distance on hand-computed cases") {
  const DegreeDistribution half(1, 2, {make_rational(1, 2), make_rational(1, 2)});
  EmpiricalDistribution emp;
  emp.birth_index = 1;
  emp.horizon = 2;
  emp.counts = {3, 1};
  emp.trials = 4;
  CHECK(tv_distance(half, emp) == doctest::Approx(0.25));

  // Empirical mass outside the exact support still counts.
  const DegreeDistribution point(1, 2, {Rational(1), Rational(0)});
  EmpiricalDistribution spill;
  spill.birth_index = 1;
  spill.horizon = 2;
  spill.counts = {2, 0, 2};
  spill.trials = 4;
  CHECK(tv_distance(point, spill) == doctest::Approx(0.5));

  EmpiricalDistribution wrong;
  wrong.birth_index = 2;
  wrong.horizon = 2;
  wrong.counts = {4};
  wrong.trials = 4;
  CHECK_THROWS_AS(tv_distance(half, wrong), std::invalid_argument);
}

TEST_CASE("tv_distance extremes") {
  // Every trial lands outside the exact support: distance 1.
  const DegreeDistribution point(1, 1, {Rational(1)});
  EmpiricalDistribution outside;
  outside.birth_index = 1;
  outside.horizon = 1;
  outside.counts = {0, 4};
  outside.trials = 4;
  CHECK(tv_distance(point, outside) == doctest::Approx(1.0));

  // All trials collapse onto one of two equally likely cells: distance 1/2.
  const DegreeDistribution half(1, 2, {make_rational(1, 2), make_rational(1, 2)});
  EmpiricalDistribution collapsed;
  collapsed.birth_index = 1;
  collapsed.horizon = 2;
  collapsed.counts = {4, 0};
  collapsed.trials = 4;
  CHECK(tv_distance(half, collapsed) == doctest::Approx(0.5));
}

TEST_CASE("chi_square on exact-multiple counts is zero and passes") {
  const DistributionTable table = first_node_table(4);
  EmpiricalDistribution emp;
  emp.birth_index = 1;
  emp.horizon = 4;
  emp.counts = {16000, 11000, 6000, 2000};  // exactly 35000 * p
  emp.trials = 35000;
  const StatReport report = chi_square(table.at(4), emp);
  CHECK_FALSE(report.untestable);
  CHECK(report.chi_square_statistic == doctest::Approx(0.0));
  CHECK(report.degrees_of_freedom == 3);
  CHECK(report.passed);
}

TEST_CASE("chi_square statistic on a two-cell split") {
  // Expected 500/500, observed 510/490: statistic 100/500 + 100/500 = 0.4.
  // The verdict is not asserted here because the default TV gate is tighter
  // than a 0.01 deviation.
  const DegreeDistribution half(1, 2, {make_rational(1, 2), make_rational(1, 2)});
  EmpiricalDistribution emp;
  emp.birth_index = 1;
  emp.horizon = 2;
  emp.counts = {510, 490};
  emp.trials = 1000;
  const StatReport report = chi_square(half, emp);
  CHECK_FALSE(report.untestable);
  CHECK(report.chi_square_statistic == doctest::Approx(0.4));
  CHECK(report.degrees_of_freedom == 1);
}

TEST_CASE("chi_square pools the sparse tail") {
  // At 70 trials the expected counts are {32, 22, 12, 4}; the last cell
  // pools into its neighbor, leaving three cells and two degrees of freedom.
  const DistributionTable table = first_node_table(4);
  EmpiricalDistribution emp;
  emp.birth_index = 1;
  emp.horizon = 4;
  emp.counts = {32, 22, 12, 4};
  emp.trials = 70;
  const StatReport report = chi_square(table.at(4), emp);
  CHECK(report.degrees_of_freedom == 2);
  CHECK(report.chi_square_statistic == doctest::Approx(0.0));
  CHECK(report.passed);
}

TEST_CASE("single-cell supports are untestable") {
  const DistributionTable table = first_node_table(1);
  EmpiricalDistribution emp;
  emp.birth_index = 1;
  emp.horizon = 1;
  emp.counts = {10};
  emp.trials = 10;
  const StatReport report = chi_square(table.at(1), emp);
  CHECK(report.untestable);
  CHECK_FALSE(report.passed);

  EmpiricalDistribution none;
  none.birth_index = 1;
  none.horizon = 1;
  none.counts = {};
  none.trials = 0;
  CHECK_THROWS_AS(chi_square(table.at(1), none), std::invalid_argument);
}

TEST_CASE("a real simulation run passes at the pinned seed") {
  SimulationConfig config;
  config.mode = SimMode::marginal;
  config.birth_index = 1;
  config.horizon = 10;
  config.trials = 200000;
  config.master_seed = 4242;
  const EmpiricalDistribution emp = run_trials(config);
  const DistributionTable table = first_node_table(10);
  const StatReport report = chi_square(table.at(10), emp);
  CHECK_FALSE(report.untestable);
  CHECK(report.passed);
  CHECK(report.trials == 200000);

  // An impossible threshold flips the verdict through the same plumbing.
  StatThresholds strict;
  strict.tv_max = 0.0;
  CHECK_FALSE(chi_square(table.at(10), emp, 5.0, strict).passed);
}

TEST_CASE("critical values are pinned and monotone") {
  CHECK(chi_square_critical_999(1) == doctest::Approx(10.8275661707));
  CHECK(chi_square_critical_999(64) == doctest::Approx(104.7163252630));
  for (unsigned df = 2; df <= 64; ++df)
    CHECK(chi_square_critical_999(df) > chi_square_critical_999(df - 1));
  CHECK_THROWS_AS(chi_square_critical_999(0), std::out_of_range);
  CHECK_THROWS_AS(chi_square_critical_999(65), std::out_of_range);
}

TEST_CASE("time shifting the birth index changes the law") {
  const EquivalenceReport report = time_invariance_report(2, 1);
  CHECK_FALSE(report.passed);
  REQUIRE(report.mismatches.size() == 2);
  CHECK(report.mismatches[0].n == 3);
  CHECK(report.mismatches[0].k == 1);
  CHECK(report.mismatches[0].recurrence_value == make_rational(4, 5));
  CHECK(report.mismatches[0].closed_value == make_rational(2, 3));

  CHECK(time_invariance_report(2, 0).passed);
  CHECK(time_invariance_report(2, 0).mismatches.empty());
  CHECK_THROWS_AS(time_invariance_report(1, 3), std::invalid_argument);
}

TEST_CASE("time shift mismatch persists for a late-born node") {
  const EquivalenceReport report = time_invariance_report(5, 3);
  CHECK_FALSE(report.passed);
  CHECK_FALSE(report.mismatches.empty());
}
