// Exact dynamic-programming evaluation of the degree-law master equations.
//
// Node indexing: nodes are 1-based by birth time. Node m is born at time
// n = m with degree 1, so its degree at time n lives in [1, n-m+1]. The
// "first node" is m = 1.
#pragma once

#include <vector>

#include "prefatt/exact.hpp"

namespace prefatt {

/// The exact law of one node's degree at a fixed time:
/// prob(k) = P(X_m(n) = k). Entries sum to exactly 1; prob(k) is exact zero
/// outside the support [1, n-m+1].
class DegreeDistribution {
 public:
  DegreeDistribution(unsigned birth_index, unsigned time,
                     std::vector<Rational> probs);

  unsigned birth_index() const { return birth_index_; }
  unsigned time() const { return time_; }

  /// Largest degree with possibly nonzero probability: n - m + 1.
  unsigned max_degree() const { return time_ - birth_index_ + 1; }

  /// P(degree == k); exact zero for k outside [1, max_degree()].
  const Rational& prob(unsigned k) const;

  /// Dense probabilities for k = 1 .. max_degree().
  const std::vector<Rational>& probs() const { return probs_; }

  friend bool operator==(const DegreeDistribution&,
                         const DegreeDistribution&) = default;

 private:
  unsigned birth_index_;
  unsigned time_;
  std::vector<Rational> probs_;
};

/// Full triangular history of one node's degree law, one row per time
/// n in [m, n_max]. Immutable once built; safe for concurrent readers.
class DistributionTable {
 public:
  DistributionTable(unsigned birth_index,
                    std::vector<DegreeDistribution> rows);

  unsigned birth_index() const { return birth_index_; }
  unsigned n_max() const;

  /// Row at time n. Throws std::out_of_range outside [birth_index, n_max].
  const DegreeDistribution& at(unsigned n) const;

  const std::vector<DegreeDistribution>& rows() const { return rows_; }

 private:
  unsigned birth_index_;
  std::vector<DegreeDistribution> rows_;
};

/// Degree-law table of the first node for n = 1 .. n_max:
///   p_{1,1} = 1,
///   p_{n,k} = (k-1)/(2n-1) * p_{n-1,k-1} + (2n-1-k)/(2n-1) * p_{n-1,k}.
/// Exact rational arithmetic throughout. Throws on n_max = 0.
DistributionTable first_node_table(unsigned n_max);

/// Degree-law table of the node born at time m, rows n = m .. n_max. The row
/// at n = m is the point mass at degree 1; later rows apply the same update
/// with the true time index n in the coefficients (no shift by m).
/// Throws unless 1 <= m <= n_max.
DistributionTable general_node_table(unsigned m, unsigned n_max);

/// Triangular table of the scaled coefficients
///   a_{n,k} = 2^{n-k} odd_product(n) / (n-1)! * p_{n,k},
/// built from their own recurrence:
///   a_{n,1} = 2^{2(n-1)},  a_{n,n} = 1,
///   a_{n,k} = [(k-1) a_{n-1,k-1} + 2(2n-1-k) a_{n-1,k}] / (n-1).
class ScaledTable {
 public:
  explicit ScaledTable(std::vector<std::vector<Rational>> rows);

  unsigned n_max() const { return static_cast<unsigned>(rows_.size()); }

  /// a_{n,k}. Throws std::out_of_range unless 1 <= k <= n <= n_max.
  const Rational& at(unsigned n, unsigned k) const;

 private:
  std::vector<std::vector<Rational>> rows_;
};

/// Builds the scaled-coefficient table up to n_max. Division by n-1 only
/// appears for interior cells, which exist only for n >= 2; n_max = 1 is the
/// single boundary cell. Throws on n_max = 0.
ScaledTable scaled_table(unsigned n_max);

/// Row lookup without recomputation. Throws std::out_of_range outside the
/// table's time range.
inline const DegreeDistribution& distribution_at(const DistributionTable& table,
                                                 unsigned n) {
  return table.at(n);
}

}  // namespace prefatt
