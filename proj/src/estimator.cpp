#include "a3cnp/estimator.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace a3cnp {

PairStats::PairStats(int items) : pairs_(items), counts_(pairs_.size(), 0), sums_(pairs_.size(), 0) {}

void PairStats::update(const Pair& pair, int y) {
  const std::size_t k = pairs_.index(pair.i, pair.j);
  ++counts_[k];
  sums_[k] += y != 0 ? 1 : 0;
  ++t_;
}

std::int64_t PairStats::min_count() const { return counts_.empty() ? 0 : *std::min_element(counts_.begin(), counts_.end()); }

double PairStats::empirical_mean(std::size_t k) const {
  if (counts_.at(k) == 0)
    throw std::logic_error("empirical mean of pair " + std::to_string(k) + " requested before it was queried");
  return static_cast<double>(sums_[k]) / static_cast<double>(counts_[k]);
}

std::vector<double> PairStats::empirical_means() const {
  std::vector<double> out(size());
  for (std::size_t k = 0; k < size(); ++k) out[k] = empirical_mean(k);
  return out;
}

PairStats PairStats::from_counts(int items, std::vector<std::int64_t> counts, std::vector<std::int64_t> sums) {
  PairStats s(items);
  if (counts.size() != s.size() || sums.size() != s.size())
    throw std::invalid_argument("from_counts: expected " + std::to_string(s.size()) + " entries");
  std::int64_t t = 0;
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (counts[k] < 0 || sums[k] < 0 || sums[k] > counts[k])
      throw std::invalid_argument("from_counts: need 0 <= sums <= counts");
    t += counts[k];
  }
  s.counts_ = std::move(counts);
  s.sums_ = std::move(sums);
  s.t_ = t;
  return s;
}

ProjectedInstance project(const PairStats& stats, const std::vector<Partition>& catalog) {
  if (catalog.empty()) throw std::invalid_argument("project: empty catalog");
  if (!stats.all_sampled()) throw std::logic_error("project: every pair needs at least one observation");
  if (catalog.front().items() != stats.items()) throw std::invalid_argument("project: catalog item count mismatch");

  PairMask observed_same = 0;
  for (std::size_t k = 0; k < stats.size(); ++k)
    if (2 * stats.sum(k) >= stats.count(k)) observed_same |= PairMask{1} << k;  // mean >= 0.5

  std::size_t best = 0;
  int best_dist = popcount(observed_same ^ catalog[0].same_mask());
  for (std::size_t c = 1; c < catalog.size() && best_dist > 0; ++c) {
    const int d = popcount(observed_same ^ catalog[c].same_mask());
    if (d < best_dist) {
      best = c;
      best_dist = d;
    }
  }

  const Partition& part = catalog[best];
  const PairMask same = part.same_mask();
  std::int64_t same_n = 0, same_s = 0, cross_n = 0, cross_s = 0;
  for (std::size_t k = 0; k < stats.size(); ++k) {
    if (same & (PairMask{1} << k)) {
      same_n += stats.count(k);
      same_s += stats.sum(k);
    } else {
      cross_n += stats.count(k);
      cross_s += stats.sum(k);
    }
  }
  double p = same_n > 0 ? static_cast<double>(same_s) / static_cast<double>(same_n) : 1.0;
  double q = cross_n > 0 ? static_cast<double>(cross_s) / static_cast<double>(cross_n) : 0.0;
  p = std::clamp(p, 0.5 + kProjectionMargin, 1.0);
  q = std::clamp(q, 0.0, 0.5 - kProjectionMargin);
  return {part, best, p, q};
}

}  // namespace a3cnp
