// a3cnp: lower-bound solver, single runs, delta sweeps.
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "a3cnp/allocation.hpp"
#include "a3cnp/engine.hpp"
#include "a3cnp/harness.hpp"
#include "a3cnp/io.hpp"

using namespace a3cnp;
using nlohmann::json;

namespace {

const std::map<std::string, StatisticKind> kStatistics{{"feasible", StatisticKind::Feasible},
                                                        {"glr", StatisticKind::GlrExact}};
const std::map<std::string, ThresholdKind> kThresholds{{"theory", ThresholdKind::Theory},
                                                        {"experimental", ThresholdKind::Experimental}};

struct RunFlags {
  double eps = 0.1;
  double sigma = 1e-3;
  StatisticKind statistic = StatisticKind::Feasible;
  ThresholdKind threshold = ThresholdKind::Experimental;
  std::int64_t max_steps = 1'000'000;
  bool baseline = false;

  void add(CLI::App* app) {
    app->add_option("--eps", eps, "mixing weight toward uniform")->check(CLI::Range(0.0, 1.0));
    app->add_option("--sigma", sigma, "regularisation")->check(CLI::PositiveNumber);
    app->add_option("--statistic", statistic, "stopping statistic")
        ->transform(CLI::CheckedTransformer(kStatistics, CLI::ignore_case));
    app->add_option("--threshold", threshold, "stopping threshold")
        ->transform(CLI::CheckedTransformer(kThresholds, CLI::ignore_case));
    app->add_option("--max-steps", max_steps, "truncation horizon");
    app->add_flag("--baseline", baseline, "round-robin sampling instead of tracking");
  }

  RunConfig config() const {
    RunConfig c;
    c.eps = eps;
    c.sigma = sigma;
    c.statistic = statistic;
    c.threshold = threshold;
    c.max_steps = max_steps;
    return c;
  }
};

void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << text;
}

json nan_to_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Active clustering with a noisy pairwise oracle"};
  app.require_subcommand(1);

  std::string instance_path, out_path, trace_path;
  double delta = 0.1;
  std::vector<double> deltas = kDefaultDeltas;
  int trials = 10;
  std::uint64_t seed = 1;
  unsigned threads = 0;
  int m = 0;
  RunFlags run_flags;

  auto* lb = app.add_subcommand("solve-lb", "lower-bound constant and optimal allocation");
  lb->add_option("--instance", instance_path, "instance JSON")->required();
  lb->add_option("--eps", run_flags.eps, "mixing weight toward uniform")->check(CLI::Range(0.0, 1.0));
  lb->add_option("--sigma", run_flags.sigma, "regularisation")->check(CLI::NonNegativeNumber);
  lb->add_option("--out", out_path, "output JSON (default stdout)");

  auto* run = app.add_subcommand("run", "one adaptive run against a simulated oracle");
  run->add_option("--instance", instance_path, "instance JSON")->required();
  run->add_option("--delta", delta, "confidence level")->check(CLI::Range(0.0, 1.0));
  run->add_option("--seed", seed, "oracle seed");
  run->add_option("--out", out_path, "result JSON (default stdout)");
  run->add_option("--trace", trace_path, "per-step CSV trace");
  run_flags.add(run);

  auto* sw = app.add_subcommand("sweep", "Monte Carlo sweep over delta");
  sw->add_option("--instance", instance_path, "instance JSON")->required();
  sw->add_option("--deltas", deltas, "descending deltas")->delimiter(',');
  sw->add_option("--trials", trials, "runs per delta")->check(CLI::PositiveNumber);
  sw->add_option("--seed", seed, "base seed");
  sw->add_option("--threads", threads, "worker threads (0 = all cores)");
  sw->add_option("--out", out_path, "CSV output (default stdout)");
  run_flags.add(sw);

  auto* bell = app.add_subcommand("bell", "number of set partitions");
  bell->add_option("--m", m, "item count")->required()->check(CLI::Range(0, 24));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*bell) {
      std::cout << bell_number(m) << '\n';
    } else if (*lb) {
      const Instance inst = load_instance(instance_path);
      const auto catalog = enumerate_partitions(inst.items());
      const SolveReport lower = solve(inst, 0.0);
      json j{{"d_star", lower.value},
             {"d_star_inv", 1.0 / lower.value},
             {"lambda", lower.lambda_star.weights()},
             {"sigma", run_flags.sigma},
             {"eps", run_flags.eps}};
      const GapConstants gc = gap_constants(inst, run_flags.eps, run_flags.sigma, catalog);
      j["tilde_d"] = gc.tilde_d;
      try {
        j["sg_bound"] = nan_to_null(sg_bound(gc));
      } catch (const std::domain_error&) {
        j["sg_bound"] = nullptr;
      }
      write_text(out_path, j.dump(2) + "\n");
    } else if (*run) {
      const Instance inst = load_instance(instance_path);
      RunConfig cfg = run_flags.config();
      cfg.delta = delta;
      cfg.seed = seed;
      cfg.record_trace = !trace_path.empty();
      const RunResult r = run_flags.baseline ? run_baseline_uniform(inst, cfg) : run_a3cnp(inst, cfg);
      write_text(out_path, run_result_to_json(r).dump(2) + "\n");
      if (!trace_path.empty()) {
        std::ofstream t(trace_path, std::ios::binary);
        if (!t) throw std::runtime_error("cannot open '" + trace_path + "' for writing");
        write_step_trace_csv(t, r.trace);
      }
    } else if (*sw) {
      SweepConfig cfg;
      cfg.instance_path = instance_path;
      cfg.deltas = deltas;
      cfg.trials = trials;
      cfg.base_seed = seed;
      cfg.run = run_flags.config();
      cfg.baseline = run_flags.baseline;
      cfg.threads = threads;
      const auto rows = sweep(cfg);
      if (out_path.empty())
        emit_csv(rows, std::cout);
      else
        emit_csv(rows, out_path);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
