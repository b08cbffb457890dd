#include "a3cnp/engine.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>

#include "a3cnp/estimator.hpp"
#include "a3cnp/sampling.hpp"

namespace a3cnp {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Solver state for one projected clustering; p and q are refreshed on every use.
struct Slot {
  AltProblem problem;
  SolverState state;
};

class TargetCache {
 public:
  TargetCache(const RunConfig& cfg) : cfg_(cfg) {}

  Allocation target(const ProjectedInstance& proj) {
    auto it = slots_.find(proj.catalog_index);
    SolverConfig sc = cfg_.solver;
    if (it == slots_.end()) {
      it = slots_.emplace(proj.catalog_index, Slot{AltProblem(proj.partition, proj.p, proj.q), {}}).first;
      sc.max_iterations = cfg_.initial_iterations;
    } else {
      it->second.problem.set_parameters(proj.p, proj.q);
      sc.max_iterations = cfg_.iterations_per_step;
    }
    return mixture(solve(it->second.problem, cfg_.sigma, sc, &it->second.state).lambda_star, cfg_.eps);
  }

  // Full-budget solve continuing from whatever state the clustering has.
  Allocation final_target(const ProjectedInstance& proj) {
    auto it = slots_.find(proj.catalog_index);
    if (it == slots_.end())
      it = slots_.emplace(proj.catalog_index, Slot{AltProblem(proj.partition, proj.p, proj.q), {}}).first;
    else
      it->second.problem.set_parameters(proj.p, proj.q);
    return mixture(solve(it->second.problem, cfg_.sigma, cfg_.solver, &it->second.state).lambda_star, cfg_.eps);
  }

 private:
  const RunConfig& cfg_;
  std::map<std::size_t, Slot> slots_;
};

enum class Policy { Tracking, RoundRobin };

RunResult run_loop(Oracle& oracle, const RunConfig& cfg, const std::optional<Partition>& truth, Policy policy) {
  const int m = oracle.items();
  cfg.validate(m);
  if (truth && truth->items() != m) throw std::invalid_argument("truth partition does not match the oracle item count");

  const auto catalog = enumerate_partitions(m);
  PairStats stats(m);
  const ThresholdConfig threshold{cfg.threshold, cfg.delta, m};
  TargetCache cache(cfg);
  RunResult res;

  auto ask = [&](const Pair& pr) {
    const int y = oracle.query(pr);
    stats.update(pr, y);
    if (cfg.record_trace) res.queries.push_back({stats.t(), pr, y});
    return y;
  };
  auto record = [&](const Pair& pr, int y, double stat, double thr, std::size_t cls, const Allocation* target) {
    if (!cfg.record_trace) return;
    res.trace.push_back({stats.t(), pr, y, stat, thr, cls, target ? target->min() : kNaN, target ? target->max() : kNaN});
  };

  const auto init = init_round(m);
  for (std::size_t k = 0; k + 1 < init.size(); ++k) record(init[k], ask(init[k]), kNaN, kNaN, 0, nullptr);

  const Pair& last_init = init.back();
  const int last_y = ask(last_init);
  ProjectedInstance proj = project(stats, catalog);
  StopDecision dec = stop_decision(stats, proj.partition, catalog, cfg.statistic, threshold);
  record(last_init, last_y, dec.statistic, dec.threshold, proj.catalog_index, nullptr);

  Allocation target;
  std::int64_t since_solve = 0;
  const std::size_t n_pairs = stats.size();
  while (!(cfg.stop_enabled && dec.stop) && stats.t() < cfg.max_steps) {
    std::size_t k = 0;
    if (policy == Policy::Tracking) {
      if (target.size() == 0 || since_solve % cfg.resolve_every == 0) target = cache.target(proj);
      ++since_solve;
      k = select_pair(stats, target);
    } else {
      k = static_cast<std::size_t>(stats.t()) % n_pairs;
    }
    const Pair pr = stats.pairs()[k];
    const int y = ask(pr);
    proj = project(stats, catalog);
    dec = stop_decision(stats, proj.partition, catalog, cfg.statistic, threshold);
    record(pr, y, dec.statistic, dec.threshold, proj.catalog_index, policy == Policy::Tracking ? &target : nullptr);
  }

  res.stop_time = stats.t();
  res.truncated = !(cfg.stop_enabled && dec.stop);
  res.output_partition = proj.partition;
  res.correct = truth.has_value() && same_class(proj.partition, *truth);
  res.final_statistic = dec.statistic;
  res.final_threshold = dec.threshold;
  res.counts = stats.counts();
  if (policy == Policy::Tracking) {
    res.final_target = cache.final_target(proj);
    res.sg_proxy_at_stop = sg_proxy(res.final_target);
  } else {
    res.final_target = Allocation::uniform(n_pairs);
    res.sg_proxy_at_stop = 1.0;
  }
  return res;
}

}  // namespace

void RunConfig::validate(int items) const {
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0, 1)");
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("eps must lie in (0, 1)");
  if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
  if (resolve_every < 1) throw std::invalid_argument("resolve_every must be at least 1");
  if (initial_iterations < 1 || iterations_per_step < 1)
    throw std::invalid_argument("solver budgets must be at least 1");
  if (max_steps <= static_cast<std::int64_t>(pair_count(items)))
    throw std::invalid_argument("max_steps must exceed the " + std::to_string(pair_count(items)) +
                                " steps of the init round");
}

RunResult run_a3cnp(const Instance& instance, const RunConfig& cfg) {
  SimulatedOracle oracle(instance, cfg.seed);
  return run_loop(oracle, cfg, instance.partition, Policy::Tracking);
}

RunResult run_a3cnp(Oracle& oracle, const RunConfig& cfg, const std::optional<Partition>& truth) {
  return run_loop(oracle, cfg, truth, Policy::Tracking);
}

RunResult run_baseline_uniform(const Instance& instance, const RunConfig& cfg) {
  SimulatedOracle oracle(instance, cfg.seed);
  return run_loop(oracle, cfg, instance.partition, Policy::RoundRobin);
}

RunResult run_baseline_uniform(Oracle& oracle, const RunConfig& cfg, const std::optional<Partition>& truth) {
  return run_loop(oracle, cfg, truth, Policy::RoundRobin);
}

}  // namespace a3cnp
