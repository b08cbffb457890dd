#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "a3cnp/core_model.hpp"
#include "a3cnp/engine.hpp"

namespace a3cnp {

inline const std::vector<double> kDefaultDeltas{1e-1, 1e-2, 1e-3, 1e-4, 1e-6, 1e-8};

struct SweepConfig {
  std::string instance_path;
  std::vector<double> deltas = kDefaultDeltas;
  int trials = 10;
  std::uint64_t base_seed = 1;
  /// Template for every run; delta and seed are overwritten per run.
  RunConfig run;
  bool baseline = false;
  /// Worker threads; 0 picks the hardware concurrency.
  unsigned threads = 0;

  /// Deltas in (0,1) and strictly descending, trials >= 1.
  void validate() const;
};

/// Lower-bound slope and gap bound shared by every row of one instance.
struct ReferenceCurves {
  double d_star = 0.0;
  double sg_bound = 0.0;  // NaN when the bound does not exist
  double lb(double delta) const;
  double ub(double delta) const;
};

ReferenceCurves reference_curves(const Instance& instance, double eps, double sigma, const SolverConfig& solver = {});

struct ResultRow {
  double delta = 0.0;
  int trial = 0;
  std::uint64_t seed = 0;
  std::int64_t stop_time = 0;
  bool correct = false;
  double sg_proxy = 0.0;
  double lb_curve = 0.0;
  double ub_curve = 0.0;
  bool truncated = false;
};

/// trials x deltas independent runs, delta-major and trial-minor, with
/// seed = base_seed + row index.
std::vector<ResultRow> sweep(const SweepConfig& cfg);
std::vector<ResultRow> sweep(const Instance& instance, const SweepConfig& cfg);

inline constexpr const char* kCsvHeader = "delta,trial,seed,stop_time,correct,sg_proxy,lb_curve,ub_curve";

void emit_csv(const std::vector<ResultRow>& rows, std::ostream& os);
void emit_csv(const std::vector<ResultRow>& rows, const std::string& path);
std::vector<ResultRow> parse_csv(std::istream& is);

/// Ordinary least-squares slope of ys on xs.
double least_squares_slope(const std::vector<double>& xs, const std::vector<double>& ys);

/// Mean stop time per delta, in the row order of the deltas.
std::vector<double> mean_stop_times(const std::vector<ResultRow>& rows, const std::vector<double>& deltas);

}  // namespace a3cnp
