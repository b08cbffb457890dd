#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "a3cnp/divergence.hpp"

using namespace a3cnp;

namespace {

double kl_direct(double x, double y) { return x * std::log(x / y) + (1 - x) * std::log((1 - x) / (1 - y)); }

// Grid search over p' in [1/2, 1] and q' in [0, 1/2].
double best_fit_by_grid(const std::vector<double>& v, const std::vector<double>& w, std::uint64_t same) {
  auto cost = [&](double fit, bool want_same) {
    double s = 0.0;
    for (std::size_t k = 0; k < v.size(); ++k)
      if (((same >> k) & 1) == (want_same ? 1u : 0u) && w[k] > 0) s += w[k] * kl_bern(v[k], fit);
    return s;
  };
  double best_p = std::numeric_limits<double>::infinity(), best_q = best_p;
  const int steps = 20000;
  for (int g = 0; g <= steps; ++g) {
    best_p = std::min(best_p, cost(0.5 + 0.5 * g / steps * (1 - 1e-9), true));
    best_q = std::min(best_q, cost(1e-9 + 0.5 * g / steps * (1 - 2e-9), false));
  }
  return best_p + best_q;
}

}  // namespace

TEST_CASE("bernoulli divergence values") {
  CHECK(std::abs(kl_bern(0.6, 0.4) - kl_direct(0.6, 0.4)) < 1e-15);
  CHECK(std::abs(kl_bern(0.6, 0.4) - 0.0810930) < 1e-7);
  CHECK(kl_bern(0.37, 0.37) == 0.0);
  CHECK(std::abs(kl_bern(1.0, 0.5) - std::log(2.0)) < 1e-15);
  CHECK(std::abs(kl_bern(0.0, 0.25) - std::log(4.0 / 3.0)) < 1e-15);
  CHECK(std::isinf(kl_bern(0.3, 0.0)));
  CHECK(std::isinf(kl_bern(0.3, 1.0)));
  CHECK(kl_bern(0.0, 0.0) == 0.0);
  CHECK_THROWS_AS(kl_bern(std::nan(""), 0.5), std::invalid_argument);
  CHECK_THROWS_AS(kl_bern(1.2, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(kl_bern(0.2, -0.1), std::invalid_argument);
}

TEST_CASE("divergence is nonnegative and convex in the second argument") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.01, 0.99);
  for (int it = 0; it < 2000; ++it) {
    const double x = u(rng), y = u(rng), h = 1e-4;
    CHECK(kl_bern(x, y) >= 0.0);
    const double second = kl_bern(x, y + h) - 2 * kl_bern(x, y) + kl_bern(x, y - h);
    CHECK(second >= -1e-12);
  }
}

TEST_CASE("binary entropy") {
  CHECK(std::abs(entropy(0.5) - std::log(2.0)) < 1e-15);
  CHECK(entropy(0.0) == 0.0);
  CHECK(entropy(1.0) == 0.0);
  CHECK(std::abs(entropy(0.6) - 0.6730117) < 1e-7);
  CHECK(std::abs(entropy(0.6) - (-0.6 * std::log(0.6) - 0.4 * std::log(0.4))) < 1e-15);
}

TEST_CASE("best-fit divergence matches a grid search") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int it = 0; it < 40; ++it) {
    const std::size_t n = 6;
    std::vector<double> v(n), w(n);
    for (std::size_t k = 0; k < n; ++k) {
      v[k] = std::round(u(rng) * 20) / 20;
      w[k] = it % 2 ? 1.0 : 1.0 + std::floor(u(rng) * 5);
    }
    const std::uint64_t same = rng() & 0x3f;
    const double exact = best_fit_divergence(v, w, same);
    const double grid = best_fit_by_grid(v, w, same);
    CHECK(exact <= grid + 1e-12);
    CHECK(grid - exact < 1e-6);
  }
}

TEST_CASE("best-fit divergence conventions") {
  const std::vector<double> half(4, 0.5), ones(4, 1.0);
  CHECK(best_fit_divergence(half, ones, 0b0011) == 0.0);
  const std::vector<double> exact{0.6, 0.4, 0.4, 0.6};
  CHECK(best_fit_divergence(exact, ones, 0b1001) < 1e-15);
  // zero weight silences an infinite term
  const std::vector<double> v{1.0, 0.0};
  const std::vector<double> w{0.0, 1.0};
  CHECK(best_fit_divergence(v, w, 0b00) == 0.0);
  CHECK_THROWS_AS(best_fit_divergence(v, std::vector<double>{1.0}, 0), std::invalid_argument);
}
