#include "prefatt/simulator.hpp"

#include <thread>

#include "prefatt/rng.hpp"

namespace prefatt {

namespace {

void validate(const SimulationConfig& config) {
  if (config.birth_index < 1)
    throw std::invalid_argument("run_trials: birth index must be >= 1");
  if (config.horizon < config.birth_index)
    throw std::invalid_argument("run_trials: horizon must be >= birth index");
  if (config.trials < 1)
    throw std::invalid_argument("run_trials: need at least one trial");
}

std::vector<std::uint64_t> run_range(const SimulationConfig& config,
                                     std::uint64_t first, std::uint64_t last) {
  const unsigned m = config.birth_index;
  const unsigned n = config.horizon;
  std::vector<std::uint64_t> counts(n - m + 1, 0);
  for (std::uint64_t i = first; i < last; ++i) {
    RngStream stream = derive_stream(config.master_seed, i);
    const unsigned k = config.mode == SimMode::marginal
                           ? simulate_marginal(m, n, stream)
                           : simulate_graph_tracked(m, n, stream);
    ++counts[k - 1];
  }
  return counts;
}

}  // namespace

EmpiricalDistribution run_trials(const SimulationConfig& config,
                                 unsigned n_threads) {
  validate(config);
  if (n_threads == 0) {
    n_threads = std::thread::hardware_concurrency();
    if (n_threads == 0) n_threads = 1;
  }
  const std::uint64_t per_thread = config.trials / n_threads;
  if (per_thread == 0) n_threads = 1;

  EmpiricalDistribution result;
  result.birth_index = config.birth_index;
  result.horizon = config.horizon;
  result.trials = config.trials;
  result.master_seed = config.master_seed;
  result.counts.assign(config.horizon - config.birth_index + 1, 0);

  if (n_threads == 1) {
    result.counts = run_range(config, 0, config.trials);
    return result;
  }

  std::vector<std::vector<std::uint64_t>> partials(n_threads);
  std::vector<std::thread> workers;
  workers.reserve(n_threads);
  for (unsigned w = 0; w < n_threads; ++w) {
    const std::uint64_t first = w * per_thread;
    const std::uint64_t last =
        (w + 1 == n_threads) ? config.trials : first + per_thread;
    workers.emplace_back([&config, &partials, w, first, last] {
      partials[w] = run_range(config, first, last);
    });
  }
  for (auto& t : workers) t.join();

  // Merging is plain addition: commutative and associative, so the totals do
  // not depend on how trials were split across workers.
  for (const auto& partial : partials)
    for (std::size_t i = 0; i < partial.size(); ++i)
      result.counts[i] += partial[i];
  return result;
}

}  // namespace prefatt
