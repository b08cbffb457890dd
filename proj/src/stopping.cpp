#include "a3cnp/stopping.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "a3cnp/divergence.hpp"

namespace a3cnp {

namespace {

std::vector<double> count_weights(const PairStats& stats) {
  std::vector<double> w(stats.size());
  for (std::size_t k = 0; k < w.size(); ++k) w[k] = static_cast<double>(stats.count(k));
  return w;
}

void require_sampled(const PairStats& stats, const char* who) {
  if (!stats.all_sampled()) throw std::logic_error(std::string(who) + ": every pair needs at least one observation");
}

void require_catalog(const PairStats& stats, const std::vector<Partition>& catalog) {
  if (catalog.empty() || catalog.front().items() != stats.items())
    throw std::invalid_argument("catalog does not match the statistics item count");
}

double min_over_alternatives(const PairStats& stats, const Partition& current, const std::vector<Partition>& catalog,
                             bool weighted) {
  const auto values = stats.empirical_means();
  const std::vector<double> weights = weighted ? count_weights(stats) : std::vector<double>(stats.size(), 1.0);
  double best = std::numeric_limits<double>::infinity();
  for (const auto& alt : catalog) {
    if (alt.same_mask() == current.same_mask()) continue;
    best = std::min(best, best_fit_divergence(values, weights, alt.same_mask()));
  }
  return best;
}

}  // namespace

double h_fn(double u) {
  if (!(u >= 1.0)) throw std::domain_error("h is defined for u >= 1");
  return u - std::log(u);
}

double h_inv(double x) {
  if (!(x >= 1.0)) throw std::domain_error("h^{-1} is defined for x >= 1");
  if (x == 1.0) return 1.0;
  // Newton on u - ln u = x from above the root
  double u = x + std::log(x) + 1.0;
  for (int it = 0; it < 100; ++it) {
    const double r = u - std::log(u) - x;
    const double next = u - r / (1.0 - 1.0 / u);
    if (std::abs(next - u) <= 1e-15 * u) {
      u = next;
      break;
    }
    u = next;
  }
  return u;
}

double h_tilde_branch(double z) { return h_fn(1.0 / std::log(z)); }

double h_tilde(double x, double z) {
  if (!(z > 1.0 && z <= std::numbers::e)) throw std::domain_error("h~_z needs z in (1, e]");
  if (x >= h_tilde_branch(z)) {
    const double u = h_inv(x);
    return std::exp(1.0 / u) * u;
  }
  return z * (x - std::log(std::log(z)));
}

double c_exp(double x) {
  if (!(x >= 0.0)) throw std::domain_error("C_exp is defined for x >= 0");
  const double zeta2 = std::numbers::pi * std::numbers::pi / 6.0;
  return 2.0 * h_tilde((h_inv(1.0 + x) + std::log(2.0 * zeta2)) / 2.0, 1.5);
}

double beta_theory(const PairStats& stats, double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0, 1)");
  require_sampled(stats, "beta_theory");
  double first = 0.0;
  for (auto n : stats.counts()) first += std::log1p(std::log(static_cast<double>(n)));
  const double pairs = static_cast<double>(stats.size());
  return 3.0 * first + pairs * c_exp(std::log(1.0 / delta) / pairs);
}

double beta_experimental(std::int64_t t, double delta, int items) {
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0, 1)");
  if (items < 2) throw std::invalid_argument("experimental threshold needs at least 2 items");
  const double rank = static_cast<double>(items - 1);
  if (static_cast<double>(t) < rank)
    throw std::invalid_argument("experimental threshold needs t >= R = " + std::to_string(items - 1));
  const double classes = static_cast<double>(bell_number(items));
  return 3.0 * rank * std::log1p(std::log(static_cast<double>(t) / rank)) +
         rank * c_exp(std::log((classes - 1.0) / delta) / rank);
}

double ThresholdConfig::evaluate(const PairStats& stats) const {
  return kind == ThresholdKind::Theory ? beta_theory(stats, delta) : beta_experimental(stats.t(), delta, items);
}

double class_objective(const PairStats& stats, const Partition& part, bool weighted) {
  require_sampled(stats, "class_objective");
  if (part.items() != stats.items()) throw std::invalid_argument("class_objective: item count mismatch");
  const auto values = stats.empirical_means();
  if (weighted) return best_fit_divergence(values, count_weights(stats), part.same_mask());
  return best_fit_divergence(values, std::vector<double>(stats.size(), 1.0), part.same_mask());
}

double z_hat(const PairStats& stats, const Partition& current, const std::vector<Partition>& catalog) {
  require_sampled(stats, "z_hat");
  require_catalog(stats, catalog);
  return static_cast<double>(stats.min_count()) * min_over_alternatives(stats, current, catalog, false);
}

double z_hat_fast(const PairStats& stats, const Partition& current, const std::vector<Partition>& catalog) {
  require_sampled(stats, "z_hat_fast");
  require_catalog(stats, catalog);
  const auto values = stats.empirical_means();
  const std::size_t total_pairs = values.size();
  double total = 0.0, entropy_sum = 0.0;
  for (double v : values) {
    total += v;
    entropy_sum += entropy(v);
  }

  // extreme same-set means per same-set size n
  std::vector<double> hi(total_pairs + 1, -std::numeric_limits<double>::infinity());
  std::vector<double> lo(total_pairs + 1, std::numeric_limits<double>::infinity());
  for (const auto& alt : catalog) {
    const PairMask same = alt.same_mask();
    if (same == current.same_mask()) continue;
    const int n = popcount(same);
    double s = 0.0;
    for_each_bit(same, [&](std::size_t k) { s += values[k]; });
    const double mean = n > 0 ? s / n : 0.0;
    hi[n] = std::max(hi[n], mean);
    lo[n] = std::min(lo[n], mean);
  }

  // cross-entropy of a clamped class fit; concave in the same-set mean
  const double ln2 = std::numbers::ln2;
  auto same_side = [&](double x) { return x >= 0.5 ? entropy(std::min(x, 1.0)) : ln2; };
  auto cross_side = [&](double x) { return x <= 0.5 ? entropy(std::max(x, 0.0)) : ln2; };
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t n = 0; n <= total_pairs; ++n) {
    if (hi[n] < lo[n]) continue;  // no class of this size
    const std::size_t n_cross = total_pairs - n;
    for (double mean : {hi[n], lo[n]}) {
      double cost = -entropy_sum;
      if (n > 0) cost += static_cast<double>(n) * same_side(mean);
      if (n_cross > 0)
        cost += static_cast<double>(n_cross) * cross_side((total - static_cast<double>(n) * mean) / n_cross);
      best = std::min(best, cost);
    }
  }
  return static_cast<double>(stats.min_count()) * std::max(best, 0.0);
}

double z_exact(const PairStats& stats, const Partition& current, const std::vector<Partition>& catalog, int guard) {
  if (stats.items() > guard)
    throw SizeLimitError("exact GLR statistic is limited to " + std::to_string(guard) + " items; use z_hat");
  require_sampled(stats, "z_exact");
  require_catalog(stats, catalog);
  return min_over_alternatives(stats, current, catalog, true);
}

StopDecision stop_decision(const PairStats& stats, const Partition& current, const std::vector<Partition>& catalog,
                           StatisticKind kind, const ThresholdConfig& threshold) {
  StopDecision d;
  d.kind = kind;
  d.statistic = kind == StatisticKind::Feasible ? z_hat_fast(stats, current, catalog)
                                                : z_exact(stats, current, catalog);
  d.threshold = threshold.evaluate(stats);
  d.stop = d.statistic > d.threshold;
  return d;
}

}  // namespace a3cnp
