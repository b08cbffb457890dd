#include "a3cnp/allocation.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>

#include "a3cnp/divergence.hpp"

namespace a3cnp {

namespace {

// Cap on a supergradient coordinate.
constexpr double kGradientCap = 50.0;

double masked_sum(std::span<const double> lam, PairMask mask) {
  double s = 0.0;
  for_each_bit(mask, [&](std::size_t k) { s += lam[k]; });
  return s;
}

// w * d(x, y) with zero weight winning over an infinite divergence
double weighted_kl(double w, double x, double y) { return w > 0.0 ? w * kl_bern(x, y) : 0.0; }

void check_pq(double p, double q) {
  if (!(q >= 0.0 && q < 0.5 && p > 0.5 && p <= 1.0))
    throw std::invalid_argument("move evaluation requires 0 <= q < 1/2 < p <= 1");
}

struct InnerOptimum {
  double pstar, qstar;
  bool q_defined, p_defined;
};

// Closed-form inner optimum; 0/0 fractions read as 0 before clamping.
InnerOptimum inner_optimum(double p, double q, double l_n1, double l_n1_rest, double l_n2, double l_n2_rest) {
  InnerOptimum o{};
  const double qden = l_n1 + l_n2_rest;
  const double pden = l_n1_rest + l_n2;
  o.q_defined = qden > 0.0;
  o.p_defined = pden > 0.0;
  o.qstar = std::min(0.5, o.q_defined ? (l_n1 * p + l_n2_rest * q) / qden : 0.0);
  o.pstar = std::max(0.5, o.p_defined ? (l_n1_rest * p + l_n2 * q) / pden : 0.0);
  o.qstar = std::max(0.0, o.qstar);
  o.pstar = std::min(1.0, o.pstar);
  return o;
}

std::vector<double> pair_probabilities(const Instance& inst) {
  const PairIndexSet idx(inst.items());
  std::vector<double> c(idx.size());
  for (std::size_t k = 0; k < idx.size(); ++k) c[k] = inst.pair_prob(idx[k]);
  return c;
}

double catalog_infimum(const Instance& inst, std::span<const double> weights, const std::vector<Partition>& catalog) {
  if (catalog.empty() || catalog.front().items() != inst.items())
    throw std::invalid_argument("catalog does not match the instance item count");
  const auto c = pair_probabilities(inst);
  const PairMask own = inst.partition.same_mask();
  double best = std::numeric_limits<double>::infinity();
  for (const auto& alt : catalog) {
    if (alt.same_mask() == own) continue;
    best = std::min(best, best_fit_divergence(c, weights, alt.same_mask()));
  }
  return best;
}

}  // namespace

Allocation::Allocation(std::vector<double> weights) : w_(std::move(weights)) {
  double s = 0.0;
  for (double x : w_) {
    if (!(x >= 0.0)) throw std::invalid_argument("allocation weights must be nonnegative");
    s += x;
  }
  if (w_.empty() || std::abs(s - 1.0) > 1e-9)
    throw std::invalid_argument("allocation weights must sum to 1 (got " + std::to_string(s) + ")");
}

Allocation Allocation::uniform(std::size_t n) {
  if (n == 0) throw std::invalid_argument("allocation over an empty pair set");
  return Allocation(std::vector<double>(n, 1.0 / static_cast<double>(n)), Unchecked{});
}

Allocation Allocation::point_mass(std::size_t n, std::size_t k) {
  if (k >= n) throw std::out_of_range("point mass index out of range");
  std::vector<double> w(n, 0.0);
  w[k] = 1.0;
  return Allocation(std::move(w), Unchecked{});
}

double Allocation::min() const { return *std::min_element(w_.begin(), w_.end()); }
double Allocation::max() const { return *std::max_element(w_.begin(), w_.end()); }
double Allocation::squared_norm() const { return std::inner_product(w_.begin(), w_.end(), w_.begin(), 0.0); }
double Allocation::mass(PairMask mask) const { return masked_sum(w_, mask); }

Allocation simplex_projection(std::span<const double> v) {
  const std::size_t n = v.size();
  if (n == 0) throw std::invalid_argument("simplex projection of an empty vector");
  std::vector<double> u(v.begin(), v.end());
  std::sort(u.begin(), u.end(), std::greater<>());
  double cum = 0.0, theta = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    cum += u[j];
    const double t = (cum - 1.0) / static_cast<double>(j + 1);
    if (u[j] - t > 0.0) theta = t;
  }
  std::vector<double> w(n);
  double s = 0.0;
  for (std::size_t k = 0; k < n; ++k) s += (w[k] = std::max(v[k] - theta, 0.0));
  for (auto& x : w) x /= s;
  return Allocation(std::move(w), Allocation::Unchecked{});
}

Allocation mix_with_uniform(const Allocation& lam, double eps) {
  if (!(eps >= 0.0 && eps <= 1.0)) throw std::invalid_argument("mixing weight must lie in [0, 1]");
  const double u = 1.0 / static_cast<double>(lam.size());
  std::vector<double> w(lam.size());
  for (std::size_t k = 0; k < w.size(); ++k) w[k] = (1.0 - eps) * lam[k] + eps * u;
  return Allocation(std::move(w), Allocation::Unchecked{});
}

Allocation mixture(const Allocation& lam, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("mixture requires eps in (0, 1)");
  return mix_with_uniform(lam, eps);
}

MoveValue move_value(const Allocation& lam, const AltMove& move, double p, double q) {
  check_pq(p, q);
  if (lam.size() != pair_count(move.source.items()))
    throw std::invalid_argument("allocation length does not match the pair set");
  const auto split = within_cross_pairs(move.source);
  const double l_n1 = lam.mass(move.n1);
  const double l_n2 = lam.mass(move.n2);
  const double l_n1_rest = lam.mass(split.within) - l_n1;
  const double l_n2_rest = lam.mass(split.cross) - l_n2;
  const auto o = inner_optimum(p, q, l_n1, std::max(0.0, l_n1_rest), l_n2, std::max(0.0, l_n2_rest));
  MoveValue mv;
  mv.pstar = o.pstar;
  mv.qstar = o.qstar;
  mv.value = weighted_kl(l_n1, p, o.qstar) + weighted_kl(l_n2_rest, q, o.qstar) + weighted_kl(l_n2, q, o.pstar) +
             weighted_kl(l_n1_rest, p, o.pstar);
  return mv;
}

ObjectiveValue objective(const Allocation& lam, const std::vector<AltMove>& moves, double p, double q, double sigma) {
  if (moves.empty()) throw std::invalid_argument("objective over an empty move set");
  ObjectiveValue best{std::numeric_limits<double>::infinity(), 0};
  for (std::size_t m = 0; m < moves.size(); ++m) {
    const double v = move_value(lam, moves[m], p, q).value;
    if (v < best.value) best = {v, m};
  }
  best.value -= 0.5 * sigma * lam.squared_norm();
  return best;
}

AltProblem::AltProblem(const Partition& part, double p, double q)
    : part_(part), p_(p), q_(q), n_(pair_count(part.items())), moves_(min_moves(part)) {
  check_pq(p, q);
  if (moves_.empty()) throw std::invalid_argument("a single item has no alternative clustering");
  const auto split = within_cross_pairs(part);
  masks_.reserve(moves_.size());
  for (const auto& mv : moves_)
    masks_.push_back({mv.n1, mv.n2, split.within & ~mv.n1, split.cross & ~mv.n2});
}

void AltProblem::set_parameters(double p, double q) {
  check_pq(p, q);
  p_ = p;
  q_ = q;
}

MoveValue AltProblem::evaluate(std::span<const double> lam, std::size_t move) const {
  const auto& mk = masks_[move];
  const double l_n1 = masked_sum(lam, mk.n1);
  const double l_n2 = masked_sum(lam, mk.n2);
  const double l_n1_rest = masked_sum(lam, mk.np_rest);
  const double l_n2_rest = masked_sum(lam, mk.nq_rest);
  const auto o = inner_optimum(p_, q_, l_n1, l_n1_rest, l_n2, l_n2_rest);
  return {weighted_kl(l_n1, p_, o.qstar) + weighted_kl(l_n2_rest, q_, o.qstar) + weighted_kl(l_n2, q_, o.pstar) +
              weighted_kl(l_n1_rest, p_, o.pstar),
          o.pstar, o.qstar};
}

ObjectiveValue AltProblem::objective(std::span<const double> lam, double sigma) const {
  ObjectiveValue best{std::numeric_limits<double>::infinity(), 0};
  for (std::size_t m = 0; m < moves_.size(); ++m) {
    const double v = evaluate(lam, m).value;
    if (v < best.value) best = {v, m};
  }
  double sq = 0.0;
  for (double x : lam) sq += x * x;
  best.value -= 0.5 * sigma * sq;
  return best;
}

void AltProblem::supergradient(std::span<const double> lam, std::size_t move, std::span<double> out) const {
  const auto& mk = masks_[move];
  const double l_n1 = masked_sum(lam, mk.n1);
  const double l_n2 = masked_sum(lam, mk.n2);
  const double l_n1_rest = masked_sum(lam, mk.np_rest);
  const double l_n2_rest = masked_sum(lam, mk.nq_rest);
  const auto o = inner_optimum(p_, q_, l_n1, l_n1_rest, l_n2, l_n2_rest);
  // undefined inner optimum: fall back to 1/2
  const double qs = o.q_defined ? o.qstar : 0.5;
  const double ps = o.p_defined ? o.pstar : 0.5;
  auto cap = [](double g) { return std::min(g, kGradientCap); };
  const double g_n1 = cap(kl_bern(p_, qs));
  const double g_nq = cap(kl_bern(q_, qs));
  const double g_n2 = cap(kl_bern(q_, ps));
  const double g_np = cap(kl_bern(p_, ps));
  std::fill(out.begin(), out.end(), 0.0);
  for_each_bit(mk.n1, [&](std::size_t k) { out[k] = g_n1; });
  for_each_bit(mk.nq_rest, [&](std::size_t k) { out[k] = g_nq; });
  for_each_bit(mk.n2, [&](std::size_t k) { out[k] = g_n2; });
  for_each_bit(mk.np_rest, [&](std::size_t k) { out[k] = g_np; });
}

SolveReport solve(const AltProblem& problem, double sigma, const SolverConfig& cfg, SolverState* warm) {
  if (!(sigma >= 0.0)) throw std::invalid_argument("regularisation sigma must be nonnegative");
  if (cfg.max_iterations < 1) throw std::invalid_argument("solver needs at least one iteration");
  const std::size_t n = problem.dimension();

  std::vector<double> lam;
  std::int64_t step0 = 0;
  if (warm != nullptr && warm->lambda.size() == n) {
    lam = warm->lambda;
    step0 = warm->step;
  } else {
    lam.assign(n, 1.0 / static_cast<double>(n));
  }

  const int tail = std::max(1, static_cast<int>(std::ceil(cfg.average_tail * cfg.max_iterations)));
  const int tail_start = cfg.max_iterations - tail;

  std::vector<double> grad(n), trial(n), avg(n, 0.0), best_lam = lam;
  double avg_weight = 0.0;
  double best_val = -std::numeric_limits<double>::infinity();
  SolveReport rep;

  int it = 0;
  for (; it < cfg.max_iterations; ++it) {
    const auto ov = problem.objective(lam, sigma);
    if (ov.value > best_val) {
      best_val = ov.value;
      best_lam = lam;
    }
    problem.supergradient(lam, ov.argmin, grad);
    const double step = cfg.step_a / (cfg.step_b + std::sqrt(static_cast<double>(step0 + it)));
    for (std::size_t k = 0; k < n; ++k) trial[k] = lam[k] + step * (grad[k] - sigma * lam[k]);
    const Allocation next = simplex_projection(trial);
    double moved = 0.0;
    for (std::size_t k = 0; k < n; ++k) moved = std::max(moved, std::abs(next[k] - lam[k]));
    lam = next.weights();
    if (it >= tail_start) {
      for (std::size_t k = 0; k < n; ++k) avg[k] += step * lam[k];
      avg_weight += step;
    }
    if (moved < cfg.tol) {
      rep.converged = true;
      ++it;
      break;
    }
  }
  rep.iterations = it;

  if (warm != nullptr) {
    warm->lambda = lam;
    warm->step = step0 + it;
  }

  // candidates: last iterate, ergodic tail average, best visited
  std::vector<double> chosen = lam;
  auto last_ov = problem.objective(lam, sigma);
  double chosen_val = last_ov.value;
  if (!rep.converged) {
    if (avg_weight > 0.0) {
      for (auto& x : avg) x /= avg_weight;
      const auto avg_alloc = simplex_projection(avg);
      const auto ov = problem.objective(avg_alloc.weights(), sigma);
      if (ov.value > chosen_val) {
        chosen = avg_alloc.weights();
        chosen_val = ov.value;
      }
    }
    if (best_val > chosen_val) {
      chosen = best_lam;
      chosen_val = best_val;
    }
  }
  const auto final_ov = problem.objective(chosen, sigma);
  rep.lambda_star = Allocation(std::move(chosen));
  rep.value = final_ov.value;
  rep.binding_move = final_ov.argmin;
  if (sigma == 0.0) rep.d_star = rep.value;
  return rep;
}

SolveReport solve(const Instance& instance, double sigma, const SolverConfig& cfg) {
  return solve(AltProblem(instance.partition, instance.p, instance.q), sigma, cfg);
}

double d_star(const Instance& instance, const SolverConfig& cfg) { return solve(instance, 0.0, cfg).value; }

double separation_constant(const Instance& instance, const std::vector<Partition>& catalog) {
  const std::vector<double> ones(pair_count(instance.items()), 1.0);
  return catalog_infimum(instance, ones, catalog);
}

double alternative_infimum(const Instance& instance, const Allocation& lam, const std::vector<Partition>& catalog) {
  if (lam.size() != pair_count(instance.items())) throw std::invalid_argument("allocation length mismatch");
  return catalog_infimum(instance, lam.span(), catalog);
}

GapConstants gap_constants(const Instance& instance, double eps, double sigma, const std::vector<Partition>& catalog,
                           const SolverConfig& cfg) {
  const AltProblem problem(instance.partition, instance.p, instance.q);
  GapConstants gc;
  gc.lambda_star = solve(problem, sigma, cfg).lambda_star;
  gc.lambda_eps = mix_with_uniform(gc.lambda_star, eps);
  const double reg = 0.5 * sigma * gc.lambda_eps.squared_norm();
  gc.d_eps_sigma_star = problem.objective(gc.lambda_eps.weights(), 0.0).value - reg;
  gc.separation = separation_constant(instance, catalog);
  gc.m_max = gc.lambda_eps.max();
  gc.m_min = gc.lambda_eps.min();
  gc.tilde_d = gc.m_min * gc.separation - reg;
  gc.tilde_d_nonpositive = !(gc.tilde_d > 0.0);
  const double n = static_cast<double>(problem.dimension());
  gc.norm_bound = (1.0 - eps) * (1.0 - eps) + (2.0 * eps - eps * eps) / n;
  gc.sg_bound_denominator = 1.0 - sigma / (2.0 * gc.m_min * gc.separation) * gc.norm_bound;
  return gc;
}

double d_eps_sigma_star(const Instance& instance, double eps, double sigma, const std::vector<Partition>& catalog,
                        const SolverConfig& cfg) {
  return gap_constants(instance, eps, sigma, catalog, cfg).d_eps_sigma_star;
}

double tilde_d(const Instance& instance, double eps, double sigma, const std::vector<Partition>& catalog,
               const SolverConfig& cfg) {
  return gap_constants(instance, eps, sigma, catalog, cfg).tilde_d;
}

double sg_bound(const GapConstants& gc) {
  if (!(gc.m_min > 0.0) || !(gc.sg_bound_denominator > 0.0))
    throw std::domain_error("regularization too large: gap bound denominator is not positive");
  return (gc.m_max / gc.m_min) / gc.sg_bound_denominator;
}

double sg_bound(const Instance& instance, double eps, double sigma, const std::vector<Partition>& catalog,
                const SolverConfig& cfg) {
  return sg_bound(gap_constants(instance, eps, sigma, catalog, cfg));
}

double sg_proxy(const Allocation& lam_eps) {
  const double lo = lam_eps.min();
  if (!(lo > 0.0)) throw std::domain_error("sg_proxy: allocation has a zero coordinate");
  return lam_eps.max() / lo;
}

}  // namespace a3cnp
