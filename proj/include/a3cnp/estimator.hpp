#pragma once

#include <cstdint>
#include <vector>

#include "a3cnp/core_model.hpp"
#include "a3cnp/oracle.hpp"

namespace a3cnp {

/// Per-pair query counts and success sums.
class PairStats {
 public:
  explicit PairStats(int items);

  void update(const QueryRecord& rec) { update(rec.pair, rec.y); }
  void update(const Pair& pair, int y);

  int items() const { return pairs_.items(); }
  const PairIndexSet& pairs() const { return pairs_; }
  std::size_t size() const { return counts_.size(); }
  std::int64_t t() const { return t_; }

  std::int64_t count(std::size_t k) const { return counts_[k]; }
  std::int64_t sum(std::size_t k) const { return sums_[k]; }
  const std::vector<std::int64_t>& counts() const { return counts_; }
  const std::vector<std::int64_t>& sums() const { return sums_; }
  std::int64_t min_count() const;
  bool all_sampled() const { return min_count() > 0; }

  /// sums / counts; throws if the pair has never been queried.
  double empirical_mean(std::size_t k) const;
  std::vector<double> empirical_means() const;

  /// Direct construction for tests and replays; validates 0 <= sums <= counts.
  static PairStats from_counts(int items, std::vector<std::int64_t> counts, std::vector<std::int64_t> sums);

 private:
  PairIndexSet pairs_;
  std::vector<std::int64_t> counts_;
  std::vector<std::int64_t> sums_;
  std::int64_t t_ = 0;
};

/// Margin keeping projected parameters strictly inside q < 1/2 < p.
inline constexpr double kProjectionMargin = 1e-6;

struct ProjectedInstance {
  Partition partition;
  std::size_t catalog_index = 0;
  double p = 0.0;
  double q = 0.0;
};

/// Nearest partition in pair-Hamming distance to the thresholded empirical
/// matrix (ties to the earliest catalog entry), with count-weighted p and q.
ProjectedInstance project(const PairStats& stats, const std::vector<Partition>& catalog);

}  // namespace a3cnp
