#include "a3cnp/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <iomanip>
#include <limits>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "a3cnp/io.hpp"

namespace a3cnp {

void SweepConfig::validate() const {
  if (deltas.empty()) throw std::invalid_argument("sweep needs at least one delta");
  for (std::size_t k = 0; k < deltas.size(); ++k) {
    if (!(deltas[k] > 0.0 && deltas[k] < 1.0)) throw std::invalid_argument("every delta must lie in (0, 1)");
    if (k > 0 && !(deltas[k] < deltas[k - 1])) throw std::invalid_argument("deltas must be strictly descending");
  }
  if (trials < 1) throw std::invalid_argument("trials must be at least 1");
}

double ReferenceCurves::lb(double delta) const { return std::log(1.0 / delta) / d_star; }
double ReferenceCurves::ub(double delta) const { return sg_bound * lb(delta); }

ReferenceCurves reference_curves(const Instance& instance, double eps, double sigma, const SolverConfig& solver) {
  ReferenceCurves rc;
  rc.d_star = d_star(instance, solver);
  const auto catalog = enumerate_partitions(instance.items());
  try {
    rc.sg_bound = sg_bound(gap_constants(instance, eps, sigma, catalog, solver));
  } catch (const std::domain_error&) {
    rc.sg_bound = std::numeric_limits<double>::quiet_NaN();
  }
  return rc;
}

std::vector<ResultRow> sweep(const SweepConfig& cfg) { return sweep(load_instance(cfg.instance_path), cfg); }

std::vector<ResultRow> sweep(const Instance& instance, const SweepConfig& cfg) {
  cfg.validate();
  cfg.run.validate(instance.items());
  const ReferenceCurves rc = reference_curves(instance, cfg.run.eps, cfg.run.sigma, cfg.run.solver);

  const std::size_t total = cfg.deltas.size() * static_cast<std::size_t>(cfg.trials);
  std::vector<ResultRow> rows(total);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;

  auto worker = [&] {
    for (std::size_t idx = next++; idx < total; idx = next++) {
      try {
        ResultRow& row = rows[idx];
        row.delta = cfg.deltas[idx / cfg.trials];
        row.trial = static_cast<int>(idx % cfg.trials);
        row.seed = cfg.base_seed + idx;
        RunConfig rcfg = cfg.run;
        rcfg.delta = row.delta;
        rcfg.seed = row.seed;
        rcfg.record_trace = false;
        const RunResult r = cfg.baseline ? run_baseline_uniform(instance, rcfg) : run_a3cnp(instance, rcfg);
        row.stop_time = r.stop_time;
        row.correct = r.correct;
        row.sg_proxy = r.sg_proxy_at_stop;
        row.truncated = r.truncated;
        row.lb_curve = rc.lb(row.delta);
        row.ub_curve = rc.ub(row.delta);
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };

  unsigned n_threads = cfg.threads != 0 ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  n_threads = static_cast<unsigned>(std::min<std::size_t>(n_threads, total));
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < n_threads; ++k) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  return rows;
}

void emit_csv(const std::vector<ResultRow>& rows, std::ostream& os) {
  os << kCsvHeader << '\n';
  os << std::setprecision(17);
  for (const auto& r : rows)
    os << r.delta << ',' << r.trial << ',' << r.seed << ',' << r.stop_time << ',' << (r.correct ? 1 : 0) << ','
       << r.sg_proxy << ',' << r.lb_curve << ',' << r.ub_curve << '\n';
}

void emit_csv(const std::vector<ResultRow>& rows, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out.imbue(std::locale::classic());
  emit_csv(rows, out);
  out.flush();
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

std::vector<ResultRow> parse_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != kCsvHeader) throw std::runtime_error("unexpected CSV header");
  std::vector<ResultRow> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) f.push_back(cell);
    if (f.size() != 8) throw std::runtime_error("CSV row with " + std::to_string(f.size()) + " fields");
    ResultRow r;
    r.delta = std::stod(f[0]);
    r.trial = std::stoi(f[1]);
    r.seed = std::stoull(f[2]);
    r.stop_time = std::stoll(f[3]);
    r.correct = f[4] == "1";
    r.sg_proxy = std::stod(f[5]);
    r.lb_curve = std::stod(f[6]);
    r.ub_curve = std::stod(f[7]);
    rows.push_back(r);
  }
  return rows;
}

double least_squares_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 2) throw std::invalid_argument("slope needs two or more paired points");
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    mx += xs[k];
    my += ys[k];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    sxy += (xs[k] - mx) * (ys[k] - my);
    sxx += (xs[k] - mx) * (xs[k] - mx);
  }
  if (sxx == 0.0) throw std::invalid_argument("slope needs distinct x values");
  return sxy / sxx;
}

std::vector<double> mean_stop_times(const std::vector<ResultRow>& rows, const std::vector<double>& deltas) {
  std::vector<double> out;
  for (double d : deltas) {
    double s = 0.0;
    int n = 0;
    for (const auto& r : rows)
      if (r.delta == d) {
        s += static_cast<double>(r.stop_time);
        ++n;
      }
    out.push_back(n > 0 ? s / n : std::numeric_limits<double>::quiet_NaN());
  }
  return out;
}

}  // namespace a3cnp
