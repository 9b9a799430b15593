// Monte Carlo realization of the growth process, two ways: the marginal
// dependent-Bernoulli degree chain of a single node, and full graph growth.
//
// Joint law of the graph mode. The marginal law only pins down, for each
// existing node, P(the new edge lands on it) = degree/(2t-1). Those masses
// sum to (2t-3)/(2t-1); the residual 2/(2t-1) is assigned to a self-loop on
// the arriving node, which then starts with degree 2. This is the unique
// single-edge completion that keeps every existing node's marginal intact
// and the degree total at exactly 2t-1 after step t.
//
// A consequence worth knowing: a node born at step m >= 2 starts at degree 2
// with probability 2/(2m-1), while the Bernoulli chain always starts at 1.
// run_trials in graph mode therefore samples the conditional law given a
// degree-1 birth when tracking a node with m >= 2 (see
// simulate_graph_tracked), which is the distribution the exact tables
// describe. The unconditional process is available through simulate_graph.
#pragma once

#include <cassert>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace prefatt {

enum class SimMode { marginal, graph };

struct SimulationConfig {
  SimMode mode = SimMode::marginal;
  unsigned birth_index = 1;  // m
  unsigned horizon = 1;      // n >= m
  std::uint64_t trials = 1;
  std::uint64_t master_seed = 0;
};

/// Degree vector of a grown graph: degrees[i] is the degree of node i+1.
/// Total degree is 2n-1 at every time n.
struct GraphState {
  unsigned time = 0;
  std::vector<unsigned> degrees;

  unsigned total_degree() const {
    unsigned s = 0;
    for (unsigned d : degrees) s += d;
    return s;
  }
};

/// Monte Carlo counts per final degree for one (m, n) coordinate pair.
/// counts[k-1] trials ended with degree k; the counts sum to trials.
struct EmpiricalDistribution {
  unsigned birth_index = 1;
  unsigned horizon = 1;
  std::vector<std::uint64_t> counts;
  std::uint64_t trials = 0;
  std::uint64_t master_seed = 0;

  std::uint64_t count(unsigned k) const {
    if (k < 1 || k > counts.size()) return 0;
    return counts[k - 1];
  }

  friend bool operator==(const EmpiricalDistribution&,
                         const EmpiricalDistribution&) = default;
};

/// One draw of the dependent-Bernoulli degree chain: start at degree 1 at
/// time m, then for each t in (m, n] gain +1 with probability X/(2t-1).
/// Returns the final degree in [1, n-m+1]. Stream must yield uniforms in
/// [0, 1) via next_uniform().
template <class Stream>
unsigned simulate_marginal(unsigned m, unsigned n, Stream& stream) {
  if (m < 1 || n < m)
    throw std::invalid_argument("simulate_marginal: requires 1 <= m <= n");
  unsigned degree = 1;
  for (unsigned t = m + 1; t <= n; ++t) {
    const double gain_prob =
        static_cast<double>(degree) / static_cast<double>(2 * t - 1);
    if (stream.next_uniform() < gain_prob) ++degree;
  }
  return degree;
}

namespace detail {

// One growth step at time t: the arriving node either attaches to an
// existing node (chosen with probability degree/(2t-1), scanned in node
// order) or self-loops with the residual 2/(2t-1).
template <class Stream>
void graph_step(std::vector<unsigned>& degrees, unsigned t, Stream& stream) {
  double x = stream.next_uniform() * static_cast<double>(2 * t - 1);
  for (unsigned& d : degrees) {
    x -= static_cast<double>(d);
    if (x < 0.0) {
      ++d;
      degrees.push_back(1);
      return;
    }
  }
  degrees.push_back(2);  // self-loop
}

// Growth step conditioned on "the new edge attaches to an existing node":
// the same scan over the renormalized masses degree/(2t-3). Used for the
// tracked node's own birth step.
template <class Stream>
void graph_step_attach_only(std::vector<unsigned>& degrees, unsigned t,
                            Stream& stream) {
  double x = stream.next_uniform() * static_cast<double>(2 * t - 3);
  for (std::size_t i = 0; i + 1 < degrees.size(); ++i) {
    x -= static_cast<double>(degrees[i]);
    if (x < 0.0) {
      ++degrees[i];
      degrees.push_back(1);
      return;
    }
  }
  // Rounding can push x to the upper edge; the mass belongs to the last node.
  ++degrees.back();
  degrees.push_back(1);
}

}  // namespace detail

/// Grows a graph to time n under the unconditional joint law. Starts from a
/// single degree-1 node at time 1.
template <class Stream>
GraphState simulate_graph(unsigned n, Stream& stream) {
  if (n < 1) throw std::invalid_argument("simulate_graph: requires n >= 1");
  std::vector<unsigned> degrees{1};
  degrees.reserve(n);
  for (unsigned t = 2; t <= n; ++t) {
    detail::graph_step(degrees, t, stream);
    assert((GraphState{t, degrees}.total_degree() == 2 * t - 1));
  }
  return GraphState{n, std::move(degrees)};
}

/// Grows a graph to time n and returns the final degree of node m, sampling
/// the conditional law given that node m was born with degree 1. Only node
/// m's own birth step is conditioned (it is the sole step the conditioning
/// event depends on); every other step follows the unconditional kernel.
/// For m = 1 the conditioning is vacuous.
template <class Stream>
unsigned simulate_graph_tracked(unsigned m, unsigned n, Stream& stream) {
  if (m < 1 || n < m)
    throw std::invalid_argument(
        "simulate_graph_tracked: requires 1 <= m <= n");
  std::vector<unsigned> degrees{1};
  degrees.reserve(n);
  for (unsigned t = 2; t <= n; ++t) {
    if (t == m)
      detail::graph_step_attach_only(degrees, t, stream);
    else
      detail::graph_step(degrees, t, stream);
    assert((GraphState{t, degrees}.total_degree() == 2 * t - 1));
  }
  return degrees[m - 1];
}

/// Runs config.trials independent replicas and aggregates final degrees of
/// node config.birth_index at time config.horizon. Marginal mode runs the
/// Bernoulli chain; graph mode runs full growth with the tracked node's
/// birth conditioned to degree 1 (see the header comment).
///
/// Trials may execute in parallel; each trial owns the stream derived from
/// (master_seed, trial_index), and counts merge by addition, so the result
/// is identical for every worker count. n_threads = 0 picks the hardware
/// concurrency.
EmpiricalDistribution run_trials(const SimulationConfig& config,
                                 unsigned n_threads = 0);

}  // namespace prefatt
