#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "a3cnp/allocation.hpp"
#include "a3cnp/core_model.hpp"
#include "a3cnp/oracle.hpp"
#include "a3cnp/stopping.hpp"

namespace a3cnp {

struct RunConfig {
  double delta = 0.1;
  double eps = 0.1;
  double sigma = 1e-3;
  StatisticKind statistic = StatisticKind::Feasible;
  ThresholdKind threshold = ThresholdKind::Experimental;
  int resolve_every = 1;
  std::int64_t max_steps = 1'000'000;
  std::uint64_t seed = 0;

  /// Step-size schedule and tolerance of every solve, and the budget of the
  /// final solve at the stopping step.
  SolverConfig solver;
  /// Budget the first time a clustering is projected.
  int initial_iterations = 500;
  /// Warm-started budget for each later re-solve of the same clustering.
  int iterations_per_step = 10;

  /// When false the run never stops early and ends truncated at max_steps.
  bool stop_enabled = true;
  bool record_trace = false;

  /// Throws std::invalid_argument on out-of-range fields.
  void validate(int items) const;
};

struct StepRecord {
  std::int64_t t = 0;
  Pair pair;
  int y = 0;
  double statistic = 0.0;  // NaN during the init round
  double threshold = 0.0;  // NaN during the init round
  std::size_t class_id = 0;
  double target_min = 0.0;  // NaN while no target exists
  double target_max = 0.0;
};

struct RunResult {
  std::int64_t stop_time = 0;
  Partition output_partition;
  bool correct = false;
  double sg_proxy_at_stop = 0.0;
  double final_statistic = 0.0;
  double final_threshold = 0.0;
  bool truncated = false;

  std::vector<std::int64_t> counts;
  /// Mixed target lambda*_eps(sigma; C_tau) behind the proxy.
  Allocation final_target;
  std::vector<StepRecord> trace;
  std::vector<QueryRecord> queries;
};

/// Adaptive run against a simulated oracle seeded with cfg.seed.
RunResult run_a3cnp(const Instance& instance, const RunConfig& cfg);
/// Adaptive run against any oracle. `truth`, when given, sets `correct`.
RunResult run_a3cnp(Oracle& oracle, const RunConfig& cfg, const std::optional<Partition>& truth = std::nullopt);

/// Round-robin sampling over the pairs with the same stopping rule.
RunResult run_baseline_uniform(const Instance& instance, const RunConfig& cfg);
RunResult run_baseline_uniform(Oracle& oracle, const RunConfig& cfg,
                               const std::optional<Partition>& truth = std::nullopt);

}  // namespace a3cnp
