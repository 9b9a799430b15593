#include "prefatt/recurrence.hpp"

#include <stdexcept>

namespace prefatt {

namespace {
const Rational& exact_zero() {
  static const Rational zero(0);
  return zero;
}
}  // namespace

DegreeDistribution::DegreeDistribution(unsigned birth_index, unsigned time,
                                       std::vector<Rational> probs)
    : birth_index_(birth_index), time_(time), probs_(std::move(probs)) {
  if (birth_index_ < 1 || time_ < birth_index_)
    throw std::invalid_argument("DegreeDistribution: need 1 <= m <= n");
  if (probs_.size() != time_ - birth_index_ + 1)
    throw std::invalid_argument("DegreeDistribution: wrong support size");
}

const Rational& DegreeDistribution::prob(unsigned k) const {
  if (k < 1 || k > max_degree()) return exact_zero();
  return probs_[k - 1];
}

DistributionTable::DistributionTable(unsigned birth_index,
                                     std::vector<DegreeDistribution> rows)
    : birth_index_(birth_index), rows_(std::move(rows)) {
  if (rows_.empty()) throw std::invalid_argument("DistributionTable: no rows");
}

unsigned DistributionTable::n_max() const {
  return birth_index_ + static_cast<unsigned>(rows_.size()) - 1;
}

const DegreeDistribution& DistributionTable::at(unsigned n) const {
  if (n < birth_index_ || n > n_max())
    throw std::out_of_range("DistributionTable: time outside [m, n_max]");
  return rows_[n - birth_index_];
}

DistributionTable general_node_table(unsigned m, unsigned n_max) {
  if (m < 1) throw std::invalid_argument("general_node_table: requires m >= 1");
  if (m > n_max)
    throw std::invalid_argument("general_node_table: requires m <= n_max");

  std::vector<DegreeDistribution> rows;
  rows.reserve(n_max - m + 1);
  // Birth row: the node starts with degree exactly 1.
  rows.emplace_back(m, m, std::vector<Rational>{Rational(1)});

  for (unsigned n = m + 1; n <= n_max; ++n) {
    const DegreeDistribution& prev = rows.back();
    const long denom = 2L * n - 1;
    std::vector<Rational> probs(n - m + 1);
    for (unsigned k = 1; k <= n - m + 1; ++k) {
      Rational v(0);
      // gain: was at k-1 and the new trial succeeded
      if (k >= 2) v += prev.prob(k - 1) * make_rational(long(k) - 1, denom);
      // stay: was at k and the new trial failed
      v += prev.prob(k) * make_rational(denom - long(k), denom);
      probs[k - 1] = v;
    }
    rows.emplace_back(m, n, std::move(probs));
  }
  return DistributionTable(m, std::move(rows));
}

DistributionTable first_node_table(unsigned n_max) {
  if (n_max < 1)
    throw std::invalid_argument("first_node_table: requires n_max >= 1");
  return general_node_table(1, n_max);
}

ScaledTable::ScaledTable(std::vector<std::vector<Rational>> rows)
    : rows_(std::move(rows)) {
  if (rows_.empty()) throw std::invalid_argument("ScaledTable: no rows");
}

const Rational& ScaledTable::at(unsigned n, unsigned k) const {
  if (n < 1 || n > n_max() || k < 1 || k > n)
    throw std::out_of_range("ScaledTable: need 1 <= k <= n <= n_max");
  return rows_[n - 1][k - 1];
}

ScaledTable scaled_table(unsigned n_max) {
  if (n_max < 1)
    throw std::invalid_argument("scaled_table: requires n_max >= 1");

  std::vector<std::vector<Rational>> rows(n_max);
  rows[0] = {Rational(1)};
  for (unsigned n = 2; n <= n_max; ++n) {
    std::vector<Rational>& row = rows[n - 1];
    const std::vector<Rational>& prev = rows[n - 2];
    row.resize(n);
    row[0] = Rational(pow2(2 * (n - 1)));
    row[n - 1] = Rational(1);
    for (unsigned k = 2; k < n; ++k) {
      Rational v = Rational(long(k) - 1) * prev[k - 2] +
                   Rational(2L * (2L * n - 1 - k)) * prev[k - 1];
      row[k - 1] = v / Rational(long(n) - 1);
    }
  }
  return ScaledTable(std::move(rows));
}

}  // namespace prefatt
