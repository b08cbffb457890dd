#include "a3cnp/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace a3cnp {

std::vector<std::size_t> forced_set(const PairStats& stats) {
  const double threshold =
      std::max(0.0, std::sqrt(static_cast<double>(stats.t())) - static_cast<double>(stats.size()) / 2.0);
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < stats.size(); ++k)
    if (static_cast<double>(stats.count(k)) < threshold) out.push_back(k);
  return out;
}

std::size_t select_pair(const PairStats& stats, const Allocation& target) {
  if (target.size() != stats.size()) throw std::invalid_argument("select_pair: target length mismatch");
  const auto forced = forced_set(stats);
  if (!forced.empty()) {
    std::size_t best = forced.front();
    for (std::size_t k : forced)
      if (stats.count(k) < stats.count(best)) best = k;
    return best;
  }
  const double t = static_cast<double>(stats.t());
  std::size_t best = 0;
  double best_score = t * target[0] - static_cast<double>(stats.count(0));
  for (std::size_t k = 1; k < stats.size(); ++k) {
    const double score = t * target[k] - static_cast<double>(stats.count(k));
    if (score > best_score) {
      best = k;
      best_score = score;
    }
  }
  return best;
}

std::vector<Pair> init_round(int items) { return PairIndexSet(items).pairs(); }

}  // namespace a3cnp
