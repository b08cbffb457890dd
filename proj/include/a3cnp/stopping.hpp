#pragma once

#include <cstdint>
#include <vector>

#include "a3cnp/core_model.hpp"
#include "a3cnp/estimator.hpp"

namespace a3cnp {

enum class ThresholdKind { Theory, Experimental };
enum class StatisticKind { Feasible, GlrExact };

/// h(u) = u - ln u on u >= 1.
double h_fn(double u);
/// Inverse of h on [1, inf); throws for x < 1.
double h_inv(double x);
/// The piecewise h~_z with z in (1, e].
double h_tilde(double x, double z);
/// Branch point h(1 / ln z) of h~_z.
double h_tilde_branch(double z);
/// C_exp(x) = 2 h~_{3/2}((h^{-1}(1 + x) + ln(2 zeta(2))) / 2).
double c_exp(double x);

/// 3 sum_ij ln(1 + ln N_ij) + C(M,2) C_exp(ln(1/delta) / C(M,2)).
double beta_theory(const PairStats& stats, double delta);

/// 3 R ln(1 + ln(t/R)) + R C_exp(ln((Bell(M) - 1)/delta) / R) with R = M - 1.
double beta_experimental(std::int64_t t, double delta, int items);

struct ThresholdConfig {
  ThresholdKind kind = ThresholdKind::Experimental;
  double delta = 0.1;
  int items = 2;

  int rank() const { return items - 1; }
  std::uint64_t bell() const { return bell_number(items); }
  double evaluate(const PairStats& stats) const;
};

struct StopDecision {
  double statistic = 0.0;
  double threshold = 0.0;
  bool stop = false;
  StatisticKind kind = StatisticKind::Feasible;
};

/// Best-fit KL distance of the empirical means to one clustering class.
/// Unweighted: every pair counts once. Weighted: pairs weighted by N_ij in
/// both the fitted means and the sum.
double class_objective(const PairStats& stats, const Partition& part, bool weighted);

/// min_ij N_ij times the smallest unweighted class objective over all
/// catalog classes other than `current`. Full catalog scan.
double z_hat(const PairStats& stats, const Partition& current, const std::vector<Partition>& catalog);

/// Same value as z_hat via the entropy decomposition: for each size n of the
/// same-cluster pair set only the classes with the largest and smallest mean
/// of the empirical values over that set can attain the minimum.
double z_hat_fast(const PairStats& stats, const Partition& current, const std::vector<Partition>& catalog);

/// GLR statistic: smallest count-weighted class objective over the other classes.
double z_exact(const PairStats& stats, const Partition& current, const std::vector<Partition>& catalog,
               int guard = kDefaultEnumerationGuard);

StopDecision stop_decision(const PairStats& stats, const Partition& current, const std::vector<Partition>& catalog,
                           StatisticKind kind, const ThresholdConfig& threshold);

}  // namespace a3cnp
