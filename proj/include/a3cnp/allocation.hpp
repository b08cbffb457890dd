#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "a3cnp/core_model.hpp"

namespace a3cnp {

/// Probability vector over the pair index set.
class Allocation {
 public:
  Allocation() = default;
  /// Validates nonnegativity and unit mass (to 1e-9).
  explicit Allocation(std::vector<double> weights);
  static Allocation uniform(std::size_t n);
  static Allocation point_mass(std::size_t n, std::size_t k);

  std::size_t size() const { return w_.size(); }
  double operator[](std::size_t k) const { return w_[k]; }
  const std::vector<double>& weights() const { return w_; }
  std::span<const double> span() const { return w_; }

  double min() const;
  double max() const;
  double squared_norm() const;
  double mass(PairMask mask) const;

 private:
  struct Unchecked {};
  Allocation(std::vector<double> w, Unchecked) : w_(std::move(w)) {}
  friend Allocation simplex_projection(std::span<const double> v);
  friend Allocation mix_with_uniform(const Allocation& lam, double eps);

  std::vector<double> w_;
};

/// Euclidean projection onto the probability simplex.
Allocation simplex_projection(std::span<const double> v);

/// (1 - eps) lam + eps u for eps in [0, 1].
Allocation mix_with_uniform(const Allocation& lam, double eps);

struct MoveValue {
  double value = 0.0;
  double pstar = 0.5;
  double qstar = 0.5;
};

/// h(lam, C') for a merge/split alternative with the inner (p', q') optimum in
/// closed form. Requires q < 1/2 < p.
MoveValue move_value(const Allocation& lam, const AltMove& move, double p, double q);

struct ObjectiveValue {
  double value = 0.0;
  std::size_t argmin = 0;
};

/// min over moves of h(lam, move) - (sigma/2)|lam|^2.
ObjectiveValue objective(const Allocation& lam, const std::vector<AltMove>& moves, double p, double q, double sigma);

/// Precomputed pair masks of min(C) for repeated evaluation.
class AltProblem {
 public:
  AltProblem(const Partition& part, double p, double q);

  const Partition& partition() const { return part_; }
  const std::vector<AltMove>& moves() const { return moves_; }
  std::size_t dimension() const { return n_; }
  double p() const { return p_; }
  double q() const { return q_; }
  /// Swaps in new oracle parameters, keeping the move structure.
  void set_parameters(double p, double q);

  MoveValue evaluate(std::span<const double> lam, std::size_t move) const;
  ObjectiveValue objective(std::span<const double> lam, double sigma) const;
  /// Supergradient of h(., move) at lam, with the inner optimum held fixed.
  void supergradient(std::span<const double> lam, std::size_t move, std::span<double> out) const;

 private:
  struct Masks {
    PairMask n1, n2, np_rest, nq_rest;
  };
  Partition part_;
  double p_, q_;
  std::size_t n_;
  std::vector<AltMove> moves_;
  std::vector<Masks> masks_;
};

struct SolverConfig {
  double step_a = 1.0;
  double step_b = 10.0;
  double tol = 1e-8;
  int max_iterations = 20000;
  /// Trailing fraction of iterates averaged into the ergodic candidate.
  double average_tail = 0.1;
};

/// Carries the iterate and step counter between successive solves.
struct SolverState {
  std::vector<double> lambda;
  std::int64_t step = 0;
};

struct SolveReport {
  Allocation lambda_star;
  double value = 0.0;
  double d_star = std::numeric_limits<double>::quiet_NaN();  // set when sigma == 0
  int iterations = 0;
  bool converged = false;
  std::size_t binding_move = 0;
};

/// Projected supergradient ascent of min_{min(C)} h(lam, .) - (sigma/2)|lam|^2
/// over the simplex. Returns the best of the final iterate, the ergodic tail
/// average and the best iterate visited. With `warm`, starts from and writes
/// back the carried state.
SolveReport solve(const AltProblem& problem, double sigma, const SolverConfig& cfg = {}, SolverState* warm = nullptr);
SolveReport solve(const Instance& instance, double sigma, const SolverConfig& cfg = {});

/// Sup-inf hardness D*(C) (sigma = 0).
double d_star(const Instance& instance, const SolverConfig& cfg = {});

/// Public mixing; eps must lie in (0, 1).
Allocation mixture(const Allocation& lam, double eps);

/// A(C): unit-weight divergence to the closest alternative clustering, over
/// the full catalog.
double separation_constant(const Instance& instance, const std::vector<Partition>& catalog);

/// inf over Alt(C) of the lam-weighted divergence, by scanning the catalog.
double alternative_infimum(const Instance& instance, const Allocation& lam, const std::vector<Partition>& catalog);

struct GapConstants {
  Allocation lambda_star;
  Allocation lambda_eps;
  double d_eps_sigma_star = 0.0;
  double separation = 0.0;  // A(C)
  double tilde_d = 0.0;
  bool tilde_d_nonpositive = false;
  double m_max = 0.0;
  double m_min = 0.0;
  double norm_bound = 0.0;  // (1-eps)^2 + (2 eps - eps^2)/|I|
  double sg_bound_denominator = 0.0;
};

/// All constants derived from lambda*_eps(sigma; C) in one pass.
GapConstants gap_constants(const Instance& instance, double eps, double sigma, const std::vector<Partition>& catalog,
                           const SolverConfig& cfg = {});

double d_eps_sigma_star(const Instance& instance, double eps, double sigma, const std::vector<Partition>& catalog,
                        const SolverConfig& cfg = {});
double tilde_d(const Instance& instance, double eps, double sigma, const std::vector<Partition>& catalog,
               const SolverConfig& cfg = {});

/// Upper bound on the multiplicative gap; throws when the regularisation
/// makes the denominator nonpositive.
double sg_bound(const GapConstants& gc);
double sg_bound(const Instance& instance, double eps, double sigma, const std::vector<Partition>& catalog,
                const SolverConfig& cfg = {});

/// max / min coordinate.
double sg_proxy(const Allocation& lam_eps);

}  // namespace a3cnp
