#include "a3cnp/core_model.hpp"

#include <algorithm>
#include <sstream>

namespace a3cnp {

PairIndexSet::PairIndexSet(int m) : m_(m) {
  if (m < 1) throw std::invalid_argument("item count must be at least 1");
  if (m > kMaxItems)
    throw SizeLimitError("item count " + std::to_string(m) + " exceeds the supported maximum of " +
                         std::to_string(kMaxItems));
  pairs_.reserve(pair_count(m));
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) pairs_.push_back({i, j});
}

std::size_t PairIndexSet::index(int i, int j) const {
  if (i > j) std::swap(i, j);
  if (!contains(i, j))
    throw std::out_of_range("pair (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                            ") is not in the pair index set");
  return static_cast<std::size_t>(i) * m_ - static_cast<std::size_t>(i) * (i + 1) / 2 + (j - i - 1);
}

bool PairIndexSet::contains(int i, int j) const {
  if (i > j) std::swap(i, j);
  return i >= 0 && j < m_ && i != j;
}

PairMask PairIndexSet::full_mask() const {
  return size() == 64 ? ~PairMask{0} : ((PairMask{1} << size()) - 1);
}

Partition::Partition(std::vector<int> labels) {
  const int m = static_cast<int>(labels.size());
  if (m > kMaxItems)
    throw SizeLimitError("partition of " + std::to_string(m) + " items exceeds the supported maximum");
  // canonical relabel by first occurrence
  std::vector<std::pair<int, int>> seen;
  labels_.resize(m);
  for (int i = 0; i < m; ++i) {
    auto it = std::find_if(seen.begin(), seen.end(), [&](const auto& s) { return s.first == labels[i]; });
    if (it == seen.end()) {
      seen.emplace_back(labels[i], static_cast<int>(seen.size()));
      labels_[i] = seen.back().second;
    } else {
      labels_[i] = it->second;
    }
  }
  k_ = static_cast<int>(seen.size());
  std::size_t k = 0;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j, ++k)
      if (labels_[i] == labels_[j]) same_mask_ |= PairMask{1} << k;
}

Partition Partition::from_blocks(const std::vector<std::vector<int>>& blocks, int m) {
  std::vector<int> labels(m, -1);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (blocks[b].empty()) throw std::invalid_argument("partition blocks must be nonempty");
    for (int item : blocks[b]) {
      if (item < 0 || item >= m)
        throw std::invalid_argument("item " + std::to_string(item + 1) + " out of range 1.." + std::to_string(m));
      if (labels[item] != -1) throw std::invalid_argument("item " + std::to_string(item + 1) + " appears twice");
      labels[item] = static_cast<int>(b);
    }
  }
  for (int i = 0; i < m; ++i)
    if (labels[i] == -1) throw std::invalid_argument("item " + std::to_string(i + 1) + " is not in any block");
  return Partition(std::move(labels));
}

std::vector<std::vector<int>> Partition::blocks() const {
  std::vector<std::vector<int>> out(k_);
  for (int i = 0; i < items(); ++i) out[labels_[i]].push_back(i);
  return out;
}

std::string Partition::to_string() const {
  std::ostringstream os;
  for (const auto& b : blocks()) {
    os << '{';
    for (std::size_t k = 0; k < b.size(); ++k) os << (k ? "," : "") << b[k] + 1;
    os << '}';
  }
  return os.str();
}

Instance::Instance(Partition part, double p_, double q_) : partition(std::move(part)), p(p_), q(q_) {
  if (!(q >= 0.0 && q < 0.5 && p > 0.5 && p <= 1.0))
    throw std::invalid_argument("instance requires 0 <= q < 1/2 < p <= 1");
  if (partition.items() < 2) throw std::invalid_argument("instance requires at least 2 items");
}

std::vector<Partition> enumerate_partitions(int m, int guard) {
  if (m < 1) throw std::invalid_argument("item count must be at least 1");
  if (m > guard || m > kMaxItems)
    throw SizeLimitError("refusing to enumerate partitions of " + std::to_string(m) +
                         " items (guard " + std::to_string(std::min(guard, kMaxItems)) + ")");
  // restricted growth strings in lexicographic order
  std::vector<Partition> out;
  out.reserve(bell_number(m));
  std::vector<int> rgs(m, 0);
  std::vector<int> prefix_max(m, 0);
  while (true) {
    out.emplace_back(rgs);
    int pos = m - 1;
    while (pos > 0 && rgs[pos] == prefix_max[pos - 1] + 1) --pos;
    if (pos == 0) break;
    ++rgs[pos];
    prefix_max[pos] = std::max(prefix_max[pos - 1], rgs[pos]);
    for (int k = pos + 1; k < m; ++k) {
      rgs[k] = 0;
      prefix_max[k] = prefix_max[pos];
    }
  }
  return out;
}

std::uint64_t bell_number(int m) {
  if (m < 0) throw std::invalid_argument("bell_number requires M >= 0");
  if (m > 24) throw SizeLimitError("Bell(" + std::to_string(m) + ") overflows 64 bits");
  // Bell triangle
  std::vector<std::uint64_t> row{1};
  for (int n = 1; n <= m; ++n) {
    std::vector<std::uint64_t> next{row.back()};
    for (auto v : row) next.push_back(next.back() + v);
    row = std::move(next);
  }
  return row.front();
}

PairSplit within_cross_pairs(const Partition& part) {
  const PairMask all = part.items() < 2 ? 0 : PairIndexSet(part.items()).full_mask();
  return {part.same_mask(), all & ~part.same_mask()};
}

std::vector<AltMove> min_moves(const Partition& part) {
  std::vector<AltMove> moves;
  const auto blocks = part.blocks();
  const int k = part.clusters();
  const PairMask src = part.same_mask();

  for (int a = 0; a < k; ++a) {
    for (int b = a + 1; b < k; ++b) {
      std::vector<int> labels = part.labels();
      for (auto& l : labels)
        if (l == b) l = a;
      Partition res(std::move(labels));
      moves.push_back({MoveKind::Merge, part, res, 0, res.same_mask() & ~src});
    }
  }

  for (int c = 0; c < k; ++c) {
    const auto& g = blocks[c];
    const int s = static_cast<int>(g.size());
    if (s < 2) continue;
    // g[0] stays; each nonempty subset of the remaining members moves out
    const std::uint32_t limit = 1u << (s - 1);
    for (std::uint32_t bits = 1; bits < limit; ++bits) {
      std::vector<int> labels = part.labels();
      for (int e = 1; e < s; ++e)
        if (bits & (1u << (e - 1))) labels[g[e]] = k;
      Partition res(std::move(labels));
      moves.push_back({MoveKind::Split, part, res, src & ~res.same_mask(), 0});
    }
  }
  return moves;
}

bool same_class(const Partition& a, const Partition& b) {
  if (a.items() != b.items()) throw std::invalid_argument("cannot compare partitions of different item counts");
  return a == b;
}

std::size_t expected_move_count(const Partition& part) {
  const std::size_t k = static_cast<std::size_t>(part.clusters());
  std::size_t n = k * (k - 1) / 2;
  for (const auto& b : part.blocks())
    if (b.size() >= 2) n += (std::size_t{1} << (b.size() - 1)) - 1;
  return n;
}

}  // namespace a3cnp
