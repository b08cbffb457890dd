#include "a3cnp/divergence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace a3cnp {

namespace {

// x ln(x / y) with the 0 ln 0 = 0 convention
double xlogxy(double x, double y) {
  if (x == 0.0) return 0.0;
  if (y == 0.0) return std::numeric_limits<double>::infinity();
  return x * std::log(x / y);
}

}  // namespace

double kl_bern(double x, double y) {
  if (std::isnan(x) || std::isnan(y)) throw std::invalid_argument("kl_bern: NaN argument");
  if (x < 0.0 || x > 1.0 || y < 0.0 || y > 1.0) throw std::invalid_argument("kl_bern: argument outside [0,1]");
  if (x == y) return 0.0;
  const double v = xlogxy(x, y) + xlogxy(1.0 - x, 1.0 - y);
  // rounding can push tiny divergences below zero
  return v < 0.0 ? 0.0 : v;
}

double entropy(double x) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  return -x * std::log(x) - (1.0 - x) * std::log1p(-x);
}

double best_fit_divergence(std::span<const double> values, std::span<const double> weights, std::uint64_t same) {
  if (values.size() != weights.size()) throw std::invalid_argument("best_fit_divergence: size mismatch");
  double ws = 0.0, vs = 0.0, wc = 0.0, vc = 0.0;
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (same & (std::uint64_t{1} << k)) {
      ws += weights[k];
      vs += weights[k] * values[k];
    } else {
      wc += weights[k];
      vc += weights[k] * values[k];
    }
  }
  const double p_fit = ws > 0.0 ? std::max(0.5, std::min(1.0, vs / ws)) : 0.5;
  const double q_fit = wc > 0.0 ? std::min(0.5, std::max(0.0, vc / wc)) : 0.5;
  double total = 0.0;
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (weights[k] == 0.0) continue;
    const double fit = (same & (std::uint64_t{1} << k)) ? p_fit : q_fit;
    total += weights[k] * kl_bern(values[k], fit);
  }
  return total;
}

}  // namespace a3cnp
