// prefatt: compute exact degree-law tables, evaluate the closed forms, run
// Monte Carlo simulations, and run the validation suite.
//
// Exit codes: 0 success / all gated checks pass, 1 validation or runtime
// failure, 2 usage error.
#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "prefatt/closed_form.hpp"
#include "prefatt/combinatorics.hpp"
#include "prefatt/records.hpp"
#include "prefatt/recurrence.hpp"
#include "prefatt/simulator.hpp"
#include "prefatt/validation.hpp"

using namespace prefatt;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

void emit(const std::string& text, const std::string& output_path) {
  if (output_path.empty())
    std::cout << text;
  else
    write_text_atomic(output_path, text);
}

std::string_view family_name(MismatchFamily family) {
  switch (family) {
    case MismatchFamily::scaled: return "scaled";
    case MismatchFamily::probability: return "probability";
    case MismatchFamily::time_invariance: return "time_invariance";
  }
  return "unknown";
}

nlohmann::json mismatch_json(const CellMismatch& mm) {
  nlohmann::json j;
  j["family"] = family_name(mm.family);
  j["n"] = mm.n;
  j["k"] = mm.k;
  j["recurrence"] = to_string(mm.recurrence_value);
  j["closed"] = to_string(mm.closed_value);
  return j;
}

constexpr std::size_t kMismatchCap = 10;

nlohmann::json capped_mismatches(const std::vector<CellMismatch>& mismatches) {
  auto arr = nlohmann::json::array();
  for (std::size_t i = 0; i < mismatches.size() && i < kMismatchCap; ++i)
    arr.push_back(mismatch_json(mismatches[i]));
  return arr;
}

void print_mismatches(const std::vector<CellMismatch>& mismatches) {
  for (std::size_t i = 0; i < mismatches.size() && i < kMismatchCap; ++i) {
    const auto& mm = mismatches[i];
    std::cerr << "  mismatch " << family_name(mm.family) << " n=" << mm.n
              << " k=" << mm.k << " recurrence=" << to_string(mm.recurrence_value)
              << " closed=" << to_string(mm.closed_value) << "\n";
  }
  if (mismatches.size() > kMismatchCap)
    std::cerr << "  ... " << (mismatches.size() - kMismatchCap) << " more\n";
}

// ---- table ----------------------------------------------------------------

struct TableArgs {
  unsigned m = 1;
  unsigned n_max = 1;
  bool scaled = false;
  std::string format = "csv";
  std::string output;
};

int run_table(const TableArgs& args) {
  std::vector<OutputRecord> records;
  if (args.scaled) {
    if (args.m != 1) {
      std::cerr << "prefatt table: --scaled rows describe the first node; "
                   "--m must be 1\n";
      return kExitUsage;
    }
    const ScaledTable table = scaled_table(args.n_max);
    for (unsigned n = 1; n <= args.n_max; ++n)
      for (unsigned k = 1; k <= n; ++k)
        records.push_back(scaled_row_record(n, k, table.at(n, k)));
  } else {
    const DistributionTable table = general_node_table(args.m, args.n_max);
    for (unsigned n = args.m; n <= args.n_max; ++n) {
      const DegreeDistribution& row = table.at(n);
      for (unsigned k = 1; k <= row.max_degree(); ++k)
        records.push_back(prob_row_record(args.m, n, k, row.prob(k)));
    }
  }

  if (args.format == "csv") {
    emit(to_csv(records), args.output);
  } else {
    nlohmann::json params;
    params["m"] = args.m;
    params["n_max"] = args.n_max;
    params["scaled"] = args.scaled;
    emit(to_json_text(make_document("table", std::move(params), records)),
         args.output);
  }
  return kExitPass;
}

// ---- closed ---------------------------------------------------------------

struct ClosedArgs {
  unsigned n = 1;
  unsigned k = 1;
  std::string mode = "exact";
};

int run_closed(const ClosedArgs& args) {
  if (args.mode == "exact" || args.mode == "both")
    std::cout << to_string(*p_closed(args.n, args.k).exact) << "\n";
  if (args.mode == "float" || args.mode == "both")
    std::cout << format_approx(p_closed_float(args.n, args.k).approx->value())
              << "\n";
  return kExitPass;
}

// ---- simulate -------------------------------------------------------------

struct SimulateArgs {
  std::string mode = "marginal";
  unsigned m = 1;
  unsigned n = 1;
  std::uint64_t trials = 1;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  std::string output;
};

OutputRecord empirical_record(const EmpiricalDistribution& emp) {
  OutputRecord rec;
  rec.kind = RecordKind::empirical;
  rec.m = emp.birth_index;
  rec.n = emp.horizon;
  rec.extra["trials"] = emp.trials;
  rec.extra["master_seed"] = emp.master_seed;
  auto counts = nlohmann::json::array();
  for (std::size_t i = 0; i < emp.counts.size(); ++i)
    counts.push_back({i + 1, emp.counts[i]});
  rec.extra["counts"] = std::move(counts);
  return rec;
}

int run_simulate(const SimulateArgs& args) {
  SimulationConfig config;
  config.mode = args.mode == "graph" ? SimMode::graph : SimMode::marginal;
  config.birth_index = args.m;
  config.horizon = args.n;
  config.trials = args.trials;
  config.master_seed = args.seed;

  const EmpiricalDistribution emp = run_trials(config, args.threads);

  nlohmann::json params;
  params["mode"] = args.mode;
  params["m"] = args.m;
  params["n"] = args.n;
  params["trials"] = args.trials;
  params["seed"] = args.seed;
  emit(to_json_text(
           make_document("simulate", std::move(params), {empirical_record(emp)})),
       args.output);
  return kExitPass;
}

// ---- validate -------------------------------------------------------------

struct ValidateArgs {
  unsigned n_max = 200;
  unsigned odd_n_max = 500;
  unsigned induction_k_max = 50;
  unsigned induction_r_max = 50;
  unsigned step_k_max = 100;
  unsigned step_r_max = 100;
  std::uint64_t trials = 1000000;
  std::uint64_t seed = 42;
  unsigned threads = 0;
  std::string output;
  unsigned fault_n = 0;  // test hook, hidden
  unsigned fault_k = 0;
};

constexpr unsigned kSimHorizon = 10;

struct CheckOutcome {
  bool gated = true;
  bool passed = true;
  OutputRecord record;
};

CheckOutcome check_equivalence_outcome(const ValidateArgs& args) {
  FaultInjection fault;
  fault.n = args.fault_n;
  fault.k = args.fault_k;
  const EquivalenceReport report = check_equivalence(args.n_max, fault);

  CheckOutcome out;
  out.passed = report.passed;
  out.record.kind = RecordKind::equivalence;
  out.record.extra["check"] = "equivalence";
  out.record.extra["gated"] = true;
  out.record.extra["passed"] = report.passed;
  out.record.extra["n_max"] = report.n_max;
  out.record.extra["mismatch_count"] = report.mismatches.size();
  out.record.extra["mismatches"] = capped_mismatches(report.mismatches);
  if (!report.passed) print_mismatches(report.mismatches);
  return out;
}

CheckOutcome check_normalization(unsigned n_max) {
  std::vector<unsigned> bad;
  for (unsigned n = 1; n <= n_max; ++n) {
    Rational sum = 0;
    for (unsigned k = 1; k <= n; ++k) sum += *p_closed(n, k).exact;
    if (sum != 1) bad.push_back(n);
  }
  CheckOutcome out;
  out.passed = bad.empty();
  out.record.kind = RecordKind::identity;
  out.record.extra["check"] = "normalization";
  out.record.extra["gated"] = true;
  out.record.extra["passed"] = out.passed;
  out.record.extra["n_max"] = n_max;
  out.record.extra["failing_n"] =
      std::vector<unsigned>(bad.begin(), bad.begin() + std::min(bad.size(), kMismatchCap));
  for (std::size_t i = 0; i < bad.size() && i < kMismatchCap; ++i)
    std::cerr << "  normalization fails at n=" << bad[i] << "\n";
  return out;
}

CheckOutcome check_boundaries(unsigned n_max) {
  std::vector<unsigned> bad;
  for (unsigned n = 1; n <= n_max; ++n) {
    const bool low = *p_closed(n, 1).exact == *p_first_degree_one(n).exact;
    const bool high = *p_closed(n, n).exact == *p_first_degree_max(n).exact;
    if (!low || !high) bad.push_back(n);
  }
  CheckOutcome out;
  out.passed = bad.empty();
  out.record.kind = RecordKind::identity;
  out.record.extra["check"] = "boundary_laws";
  out.record.extra["gated"] = true;
  out.record.extra["passed"] = out.passed;
  out.record.extra["n_max"] = n_max;
  out.record.extra["failing_n"] =
      std::vector<unsigned>(bad.begin(), bad.begin() + std::min(bad.size(), kMismatchCap));
  for (std::size_t i = 0; i < bad.size() && i < kMismatchCap; ++i)
    std::cerr << "  boundary law fails at n=" << bad[i] << "\n";
  return out;
}

CheckOutcome check_odd_product(unsigned n_max) {
  std::vector<unsigned> bad;
  for (unsigned n = 0; n <= n_max; ++n) {
    if (odd_product(n) * pow2(n) * factorial(n) != factorial(2 * n))
      bad.push_back(n);
  }
  CheckOutcome out;
  out.passed = bad.empty();
  out.record.kind = RecordKind::identity;
  out.record.extra["check"] = "odd_product";
  out.record.extra["gated"] = true;
  out.record.extra["passed"] = out.passed;
  out.record.extra["n_max"] = n_max;
  out.record.extra["failing_n"] =
      std::vector<unsigned>(bad.begin(), bad.begin() + std::min(bad.size(), kMismatchCap));
  for (std::size_t i = 0; i < bad.size() && i < kMismatchCap; ++i)
    std::cerr << "  odd-product identity fails at n=" << bad[i] << "\n";
  return out;
}

CheckOutcome check_identity_grid(const char* name, unsigned k_max, unsigned r_max,
                                 bool induction) {
  auto failures = nlohmann::json::array();
  std::size_t failure_count = 0;
  for (unsigned k = 2; k <= k_max; ++k) {
    for (unsigned r = 0; r <= r_max; ++r) {
      const bool ok =
          induction ? check_induction_identity(k, r) : check_step_identity(k, r);
      if (ok) continue;
      ++failure_count;
      if (failures.size() < kMismatchCap) {
        nlohmann::json f;
        f["k"] = k;
        f["r"] = r;
        if (induction) {
          f["lhs"] = to_string(induction_identity_lhs(k, r));
          f["rhs"] = to_string(induction_identity_rhs(k, r));
        } else {
          f["lhs"] = to_string(step_identity_lhs(k, r));
          f["rhs"] = to_string(step_identity_rhs(k, r));
        }
        failures.push_back(std::move(f));
        std::cerr << "  " << name << " fails at k=" << k << " r=" << r << "\n";
      }
    }
  }
  CheckOutcome out;
  out.passed = failure_count == 0;
  out.record.kind = RecordKind::identity;
  out.record.extra["check"] = name;
  out.record.extra["gated"] = true;
  out.record.extra["passed"] = out.passed;
  out.record.extra["k_max"] = k_max;
  out.record.extra["r_max"] = r_max;
  out.record.extra["failure_count"] = failure_count;
  out.record.extra["failures"] = std::move(failures);
  return out;
}

CheckOutcome check_simulation(const char* name, SimMode mode, unsigned m,
                              const DegreeDistribution& exact,
                              const ValidateArgs& args) {
  SimulationConfig config;
  config.mode = mode;
  config.birth_index = m;
  config.horizon = kSimHorizon;
  config.trials = args.trials;
  config.master_seed = args.seed;
  const EmpiricalDistribution emp = run_trials(config, args.threads);
  const StatReport report = chi_square(exact, emp);

  CheckOutcome out;
  // An untestable support (pooled to one cell) yields no verdict either way.
  out.passed = report.untestable || report.passed;
  out.record.kind = RecordKind::stat;
  out.record.m = m;
  out.record.n = kSimHorizon;
  out.record.extra["check"] = name;
  out.record.extra["gated"] = true;
  out.record.extra["passed"] = out.passed;
  out.record.extra["mode"] = mode == SimMode::graph ? "graph" : "marginal";
  out.record.extra["trials"] = args.trials;
  out.record.extra["seed"] = args.seed;
  out.record.extra["tv_distance"] = format_approx(report.tv_distance);
  out.record.extra["tv_max"] = format_approx(StatThresholds{}.tv_max);
  out.record.extra["chi_square"] = format_approx(report.chi_square_statistic);
  out.record.extra["degrees_of_freedom"] = report.degrees_of_freedom;
  if (!report.untestable)
    out.record.extra["critical_999"] =
        format_approx(chi_square_critical_999(report.degrees_of_freedom));
  out.record.extra["untestable"] = report.untestable;
  if (!out.passed)
    std::cerr << "  " << name << " tv=" << report.tv_distance
              << " chi_square=" << report.chi_square_statistic
              << " df=" << report.degrees_of_freedom << "\n";
  return out;
}

CheckOutcome check_time_invariance() {
  constexpr unsigned kM = 2;
  constexpr unsigned kTMax = 4;
  const EquivalenceReport report = time_invariance_report(kM, kTMax);
  CheckOutcome out;
  out.gated = false;
  out.passed = true;  // descriptive only, never gates
  out.record.kind = RecordKind::equivalence;
  out.record.extra["check"] = "time_invariance";
  out.record.extra["gated"] = false;
  out.record.extra["m"] = kM;
  out.record.extra["t_max"] = kTMax;
  out.record.extra["differing_cells"] = report.mismatches.size();
  out.record.extra["mismatches"] = capped_mismatches(report.mismatches);
  out.record.extra["note"] =
      "descriptive: rows at equal age differ because the update coefficients "
      "depend on absolute time";
  return out;
}

int run_validate(const ValidateArgs& args) {
  warm_factorials(2 * std::max(args.n_max, args.odd_n_max) + 2);

  std::vector<CheckOutcome> outcomes;
  outcomes.push_back(check_equivalence_outcome(args));
  outcomes.push_back(check_normalization(args.n_max));
  outcomes.push_back(check_boundaries(args.n_max));
  outcomes.push_back(check_odd_product(args.odd_n_max));
  outcomes.push_back(check_identity_grid("induction_identity", args.induction_k_max,
                                         args.induction_r_max, true));
  outcomes.push_back(check_identity_grid("step_identity", args.step_k_max,
                                         args.step_r_max, false));

  const DistributionTable first = first_node_table(kSimHorizon);
  const DistributionTable third = general_node_table(3, kSimHorizon);
  outcomes.push_back(check_simulation("sim_marginal_m1", SimMode::marginal, 1,
                                      first.at(kSimHorizon), args));
  outcomes.push_back(check_simulation("sim_graph_m1", SimMode::graph, 1,
                                      first.at(kSimHorizon), args));
  outcomes.push_back(check_simulation("sim_graph_m3", SimMode::graph, 3,
                                      third.at(kSimHorizon), args));
  outcomes.push_back(check_time_invariance());

  bool all_passed = true;
  std::vector<OutputRecord> records;
  records.reserve(outcomes.size());
  for (const auto& outcome : outcomes) {
    const std::string check = outcome.record.extra.at("check");
    if (outcome.gated) {
      all_passed = all_passed && outcome.passed;
      std::cerr << "check " << check << ": "
                << (outcome.passed ? "pass" : "FAIL") << "\n";
    } else {
      std::cerr << "check " << check << ": informational\n";
    }
    records.push_back(outcome.record);
  }

  nlohmann::json params;
  params["n_max"] = args.n_max;
  params["odd_n_max"] = args.odd_n_max;
  params["induction_k_max"] = args.induction_k_max;
  params["induction_r_max"] = args.induction_r_max;
  params["step_k_max"] = args.step_k_max;
  params["step_r_max"] = args.step_r_max;
  params["trials"] = args.trials;
  params["seed"] = args.seed;
  nlohmann::json doc = make_document("validate", std::move(params), records);
  doc["passed"] = all_passed;
  emit(to_json_text(doc), args.output);

  std::cerr << "validate: " << (all_passed ? "PASS" : "FAIL") << "\n";
  return all_passed ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact and Monte Carlo analysis of the single-edge "
               "preferential-attachment degree law"};
  app.require_subcommand(1);

  TableArgs table_args;
  CLI::App* table = app.add_subcommand(
      "table", "Exact degree-law table rows (CSV or JSON)");
  table->add_option("--m", table_args.m, "Birth index of the tracked node")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  table->add_option("--n-max", table_args.n_max, "Largest time to tabulate")
      ->required()
      ->check(CLI::PositiveNumber);
  table->add_flag("--scaled", table_args.scaled,
                  "Emit scaled coefficients a_{n,k} instead of probabilities");
  table->add_option("--format", table_args.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  table->add_option("--output", table_args.output,
                    "Output file (default stdout); written atomically");

  ClosedArgs closed_args;
  CLI::App* closed = app.add_subcommand(
      "closed", "Evaluate the closed-form p_{n,k} for the first node");
  closed->add_option("--n", closed_args.n, "Time")
      ->required()
      ->check(CLI::PositiveNumber);
  closed->add_option("--k", closed_args.k, "Degree")
      ->required()
      ->check(CLI::PositiveNumber);
  closed->add_option("--mode", closed_args.mode,
                     "exact prints num/den, float prints a decimal, both "
                     "prints exact then float on separate lines")
      ->check(CLI::IsMember({"exact", "float", "both"}))
      ->capture_default_str();

  SimulateArgs sim_args;
  CLI::App* simulate = app.add_subcommand(
      "simulate", "Monte Carlo degree counts for one node (JSON)");
  simulate->add_option("--mode", sim_args.mode,
                       "marginal runs the Bernoulli degree chain, graph grows "
                       "the full multigraph")
      ->check(CLI::IsMember({"marginal", "graph"}))
      ->capture_default_str();
  simulate->add_option("--m", sim_args.m, "Birth index of the tracked node")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  simulate->add_option("--n", sim_args.n, "Horizon (final time)")
      ->required()
      ->check(CLI::PositiveNumber);
  simulate->add_option("--trials", sim_args.trials, "Number of independent trials")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  simulate->add_option("--seed", sim_args.seed, "Master seed")
      ->capture_default_str();
  simulate->add_option("--threads", sim_args.threads,
                       "Worker threads; 0 = hardware concurrency. The counts "
                       "are identical for every value.")
      ->capture_default_str();
  simulate->add_option("--output", sim_args.output,
                       "Output file (default stdout); written atomically");

  ValidateArgs val_args;
  CLI::App* validate = app.add_subcommand(
      "validate",
      "Run every gated check; defaults reproduce the acceptance suite");
  validate->add_option("--n-max", val_args.n_max,
                       "Equivalence / normalization / boundary range")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  validate->add_option("--odd-n-max", val_args.odd_n_max,
                       "Odd-product identity range")
      ->capture_default_str();
  validate->add_option("--induction-k-max", val_args.induction_k_max,
                       "Summed-identity k range (k from 2)")
      ->check(CLI::Range(2u, 100000u))
      ->capture_default_str();
  validate->add_option("--induction-r-max", val_args.induction_r_max,
                       "Summed-identity r range (r from 0)")
      ->capture_default_str();
  validate->add_option("--step-k-max", val_args.step_k_max,
                       "Step-identity k range (k from 2)")
      ->check(CLI::Range(2u, 100000u))
      ->capture_default_str();
  validate->add_option("--step-r-max", val_args.step_r_max,
                       "Step-identity r range (r from 0)")
      ->capture_default_str();
  validate->add_option("--trials", val_args.trials, "Trials per simulation check")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  validate->add_option("--seed", val_args.seed, "Master seed for the simulations")
      ->capture_default_str();
  validate->add_option("--threads", val_args.threads,
                       "Worker threads; 0 = hardware concurrency")
      ->capture_default_str();
  validate->add_option("--output", val_args.output,
                       "Write the JSON summary here instead of stdout");
  // Failure-path hooks: perturb one closed-form cell by +1.
  validate->add_option("--fault-n", val_args.fault_n)->group("");
  validate->add_option("--fault-k", val_args.fault_k)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (*table) return run_table(table_args);
    if (*closed) return run_closed(closed_args);
    if (*simulate) return run_simulate(sim_args);
    if (*validate) return run_validate(val_args);
  } catch (const std::invalid_argument& e) {
    std::cerr << "prefatt: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "prefatt: " << e.what() << "\n";
    return kExitFail;
  }
  return kExitUsage;
}
