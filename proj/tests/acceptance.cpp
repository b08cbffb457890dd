// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "a3cnp/allocation.hpp"
#include "a3cnp/engine.hpp"
#include "a3cnp/harness.hpp"
#include "a3cnp/stopping.hpp"

using namespace a3cnp;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

char buf[512];

template <class... Args>
std::string fmt(const char* f, Args... args) {
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Partition blocks1(std::vector<std::vector<int>> one_based, int m) {
  for (auto& b : one_based)
    for (auto& x : b) --x;
  return Partition::from_blocks(one_based, m);
}

const Instance kFixture(blocks1({{1, 2}, {3, 4, 5}, {6}}, 6), 0.6, 0.4);

std::vector<double> random_simplex(std::mt19937_64& rng, std::size_t n, bool sparse) {
  std::exponential_distribution<double> e(1.0);
  std::bernoulli_distribution drop(0.3);
  std::vector<double> w(n);
  double s = 0;
  for (auto& x : w) s += (x = sparse && drop(rng) ? 0.0 : e(rng));
  if (s == 0) {
    w[0] = 1;
    s = 1;
  }
  for (auto& x : w) x /= s;
  return w;
}

PairStats fuzz_stats(std::mt19937_64& rng, int m, bool equal_counts) {
  const std::size_t n = pair_count(m);
  std::uniform_int_distribution<int> cnt(1, 25);
  const int common = cnt(rng);
  std::vector<std::int64_t> c(n), s(n);
  for (std::size_t k = 0; k < n; ++k) {
    c[k] = equal_counts ? common : cnt(rng);
    // mix of informative and uniform sums
    const double bias = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    s[k] = std::binomial_distribution<std::int64_t>(c[k], bias)(rng);
  }
  return PairStats::from_counts(m, c, s);
}

Outcome explicit_lower_bound() {
  const Instance inst(blocks1({{1, 2}, {3, 4}, {5, 6}}, 6), 0.6, 0.4);
  const double target = 3.0 / (0.2 * std::log(1.5));
  const double inv = 1.0 / d_star(inst);
  const double rel = std::abs(inv - target) / target;
  return {rel <= 0.02, fmt("D*^-1 = %.4f, target %.4f, relative error %.3f (tolerance 0.02)", inv, target, rel)};
}

Outcome uniform_optimum() {
  double worst = 0;
  for (int m : {4, 6}) {
    for (bool one : {true, false}) {
      std::vector<int> labels(m);
      for (int i = 0; i < m; ++i) labels[i] = one ? 0 : i;
      const auto rep = solve(Instance(Partition(labels), 0.6, 0.4), 0.0);
      const double u = 1.0 / pair_count(m);
      for (std::size_t k = 0; k < rep.lambda_star.size(); ++k) worst = std::max(worst, std::abs(rep.lambda_star[k] - u));
    }
  }
  return {worst <= 1e-4, fmt("max |lambda - uniform| = %.2e (tolerance 1e-4)", worst)};
}

Outcome neighbour_reduction() {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> pu(0.55, 1.0), qu(0.0, 0.45);
  double worst = 0;
  long cases = 0;
  for (int m : {4, 5, 6}) {
    const auto catalog = enumerate_partitions(m);
    for (const auto& part : catalog) {
      const Instance inst(part, pu(rng), qu(rng));
      const auto moves = min_moves(part);
      for (int it = 0; it < 50; ++it) {
        const Allocation lam(random_simplex(rng, pair_count(m), it % 5 == 4));
        const double reduced = objective(lam, moves, inst.p, inst.q, 0.0).value;
        const double full = alternative_infimum(inst, lam, catalog);
        worst = std::max(worst, std::abs(reduced - full));
        ++cases;
      }
    }
  }
  return {worst <= 1e-9, fmt("%ld (instance, lambda) cases, max gap %.2e (tolerance 1e-9)", cases, worst)};
}

Outcome glr_dominates_feasible() {
  std::mt19937_64 rng(77);
  std::vector<std::vector<Partition>> catalogs(7);
  for (int m = 2; m <= 6; ++m) catalogs[m] = enumerate_partitions(m);
  double worst_order = 0, worst_equal = 0;
  int violations = 0, equal_cases = 0;
  for (int it = 0; it < 10000; ++it) {
    const int m = 2 + it % 5;
    const bool equal = it % 4 == 0;
    const auto s = fuzz_stats(rng, m, equal);
    const auto& cat = catalogs[m];
    const auto& cur = cat[rng() % cat.size()];
    const double zh = z_hat(s, cur, cat), ze = z_exact(s, cur, cat);
    worst_order = std::max(worst_order, zh - ze);
    if (ze < zh - 1e-12) ++violations;
    if (equal) {
      ++equal_cases;
      worst_equal = std::max(worst_equal, std::abs(ze - zh) / std::max(1.0, ze));
    }
  }
  const bool pass = violations == 0 && worst_equal <= 1e-12;
  return {pass, fmt("10000 states: %d with Z < Zhat - 1e-12 (max Zhat - Z = %.2e); %d equal-count states, max relative "
                    "gap %.2e",
                    violations, worst_order, equal_cases, worst_equal)};
}

Outcome fast_path() {
  std::mt19937_64 rng(5150);
  std::vector<std::vector<Partition>> catalogs(7);
  for (int m = 2; m <= 6; ++m) catalogs[m] = enumerate_partitions(m);
  double worst = 0;
  for (int it = 0; it < 1000; ++it) {
    const int m = 2 + it % 5;
    const auto s = fuzz_stats(rng, m, it % 3 == 0);
    const auto& cat = catalogs[m];
    const auto& cur = cat[rng() % cat.size()];
    worst = std::max(worst, std::abs(z_hat_fast(s, cur, cat) - z_hat(s, cur, cat)));
  }
  return {worst <= 1e-9, fmt("1000 states, max |fast - full| = %.2e (tolerance 1e-9)", worst)};
}

Outcome delta_correctness() {
  SweepConfig cfg;
  cfg.deltas = {0.1};
  cfg.trials = 200;
  cfg.base_seed = 1000;
  const auto rows = sweep(kFixture, cfg);
  int wrong = 0, truncated = 0;
  for (const auto& r : rows) {
    wrong += r.correct ? 0 : 1;
    truncated += r.truncated ? 1 : 0;
  }
  const double frac = wrong / 200.0;
  return {frac < 0.1 && truncated == 0,
          fmt("%d/200 wrong (fraction %.3f, limit 0.1), %d truncated, mean stop time %.0f", wrong, frac, truncated,
              mean_stop_times(rows, cfg.deltas)[0])};
}

Outcome tracking_convergence() {
  const auto catalog = enumerate_partitions(6);
  const auto target = gap_constants(kFixture, 0.1, 1e-3, catalog).lambda_eps;
  double worst = 0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    RunConfig cfg;
    cfg.seed = 500 + seed;
    cfg.stop_enabled = false;
    cfg.max_steps = 200000;
    const auto r = run_a3cnp(kFixture, cfg);
    for (std::size_t k = 0; k < target.size(); ++k)
      worst = std::max(worst, std::abs(static_cast<double>(r.counts[k]) / r.stop_time - target[k]));
  }
  return {worst < 0.02, fmt("5 runs of 200000 steps, max ||N/t - lambda*_eps||_inf = %.4f (limit 0.02)", worst)};
}

Outcome slope_and_baseline() {
  const auto rc = reference_curves(kFixture, 0.1, 1e-3);
  SweepConfig cfg;
  cfg.deltas = {1e-4, 1e-6, 1e-8};
  cfg.trials = 10;
  cfg.base_seed = 2000;
  const auto rows = sweep(kFixture, cfg);
  const auto means = mean_stop_times(rows, cfg.deltas);
  std::vector<double> xs;
  for (double d : cfg.deltas) xs.push_back(std::log(1 / d));
  const double slope = least_squares_slope(xs, means);
  const double lo = 0.8 / rc.d_star, hi = 1.25 * rc.sg_bound / rc.d_star;
  const bool slope_ok = slope >= lo && slope <= hi;

  SweepConfig at3;
  at3.deltas = {1e-3};
  at3.trials = 10;
  at3.base_seed = 3000;
  const double adaptive = mean_stop_times(sweep(kFixture, at3), at3.deltas)[0];
  at3.baseline = true;
  const double uniform = mean_stop_times(sweep(kFixture, at3), at3.deltas)[0];
  const bool base_ok = uniform >= adaptive;
  return {slope_ok && base_ok,
          fmt("slope %.1f in [%.1f, %.1f]: %s; delta=1e-3 mean stop time uniform %.0f vs adaptive %.0f "
              "(need uniform >= adaptive): %s",
              slope, lo, hi, slope_ok ? "ok" : "no", uniform, adaptive, base_ok ? "ok" : "no")};
}

Outcome proxy_at_stop() {
  const auto catalog = enumerate_partitions(6);
  const auto gc = gap_constants(kFixture, 0.1, 1e-3, catalog);
  const double ratio = gc.m_max / gc.m_min;
  double worst = 0, lo = 1e9, hi = 0;
  bool ge1 = true;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    RunConfig cfg;
    cfg.seed = 4000 + seed;
    const auto r = run_a3cnp(kFixture, cfg);
    ge1 = ge1 && r.sg_proxy_at_stop >= 1.0;
    worst = std::max(worst, std::abs(r.sg_proxy_at_stop - ratio) / ratio);
    lo = std::min(lo, r.sg_proxy_at_stop);
    hi = std::max(hi, r.sg_proxy_at_stop);
  }
  return {ge1 && worst <= 0.25, fmt("proxy range [%.3f, %.3f], static ratio %.3f, max relative deviation %.3f "
                                    "(limit 0.25)",
                                    lo, hi, ratio, worst)};
}

Outcome monotone_in_flipped_mass() {
  std::mt19937_64 rng(31337);
  std::uniform_real_distribution<double> pu(0.55, 0.95), qu(0.05, 0.45);
  std::uniform_int_distribution<int> mu(3, 6);
  const double h = 1e-6;
  double worst = 0;
  int tested = 0;
  while (tested < 1000) {
    const int m = mu(rng);
    std::vector<int> labels(m);
    for (auto& l : labels) l = static_cast<int>(rng() % m);
    const Partition part(labels);
    const AltProblem prob(part, pu(rng), qu(rng));
    const auto lam = random_simplex(rng, prob.dimension(), false);
    const std::size_t mv = rng() % prob.moves().size();
    const auto base = prob.evaluate(lam, mv);
    if (!(base.qstar < 0.5 && base.pstar > 0.5)) continue;  // interior optima only
    const auto& move = prob.moves()[mv];
    for (PairMask mask : {move.n1, move.n2}) {
      for_each_bit(mask, [&](std::size_t k) {
        auto bumped = lam;
        bumped[k] += h;
        const double deriv = (prob.evaluate(bumped, mv).value - base.value) / h;
        worst = std::min(worst, deriv);
      });
    }
    ++tested;
  }
  return {worst >= -1e-8, fmt("1000 interior (lambda, move) pairs, min directional derivative %.3e (slack 1e-8)", worst)};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
    double budget_s;  // <= 0: no runtime limit
  };
  const std::vector<Criterion> criteria{
      {1, "explicit lower bound for three pairs", explicit_lower_bound, 10},
      {2, "uniform optimum for K=1 and K=M", uniform_optimum, 10},
      {3, "merge/split neighbours attain the alternative infimum", neighbour_reduction, 30},
      {4, "exact statistic dominates the feasible one", glr_dominates_feasible, 60},
      {5, "closed-form feasible statistic", fast_path, 30},
      {6, "delta-correctness at delta=0.1", delta_correctness, 0},
      {7, "tracking convergence", tracking_convergence, 0},
      {8, "sample-complexity slope and uniform baseline", slope_and_baseline, 0},
      {9, "gap proxy at stopping time", proxy_at_stop, 0},
      {10, "monotonicity in flipped-pair mass", monotone_in_flipped_mass, 0},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool pass = o.pass;
    std::string timing = fmt("%.2fs", secs);
    if (c.budget_s > 0) {
      timing += fmt(" of %.0fs", c.budget_s);
      if (secs >= c.budget_s) pass = false;
    }
    failed += pass ? 0 : 1;
    std::printf("criterion %2d: %s  %s: %s [%s]\n", c.id, pass ? "PASS" : "FAIL", c.name, o.detail.c_str(),
                timing.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
