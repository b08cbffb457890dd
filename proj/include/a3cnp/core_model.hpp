#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace a3cnp {

/// Raised when a caller asks for a combinatorial enumeration beyond the guard.
class SizeLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bitmask over the pair index set. Bit k is the k-th pair in lexicographic order.
using PairMask = std::uint64_t;

/// Largest item count whose pair set fits in a PairMask (C(11,2) = 55).
inline constexpr int kMaxItems = 11;
/// Default enumeration guard; Bell(10) = 115975.
inline constexpr int kDefaultEnumerationGuard = 10;

struct Pair {
  int i = 0;  // 0-based, i < j
  int j = 0;
  friend bool operator==(const Pair&, const Pair&) = default;
};

/// All pairs (i, j), i < j, of M items in lexicographic order.
class PairIndexSet {
 public:
  explicit PairIndexSet(int m);

  int items() const { return m_; }
  std::size_t size() const { return pairs_.size(); }
  const std::vector<Pair>& pairs() const { return pairs_; }
  const Pair& operator[](std::size_t k) const { return pairs_[k]; }

  /// Position of (i, j) in the lexicographic order. Accepts either argument order.
  std::size_t index(int i, int j) const;
  bool contains(int i, int j) const;
  PairMask full_mask() const;

 private:
  int m_;
  std::vector<Pair> pairs_;
};

inline std::size_t pair_count(int m) { return static_cast<std::size_t>(m) * (m - 1) / 2; }

/// Set partition of {0, ..., M-1} stored as canonical labels: item 0 has
/// label 0 and each new cluster takes the next unused label in item order.
class Partition {
 public:
  Partition() = default;
  /// Any labelling; it is canonicalized.
  explicit Partition(std::vector<int> labels);
  /// Blocks of 0-based items. Must cover [0, M) exactly once.
  static Partition from_blocks(const std::vector<std::vector<int>>& blocks, int m);

  int items() const { return static_cast<int>(labels_.size()); }
  int clusters() const { return k_; }
  const std::vector<int>& labels() const { return labels_; }
  int label(int item) const { return labels_[item]; }
  bool same_cluster(int i, int j) const { return labels_[i] == labels_[j]; }

  /// Blocks sorted by least element, items ascending inside each block.
  std::vector<std::vector<int>> blocks() const;
  /// Pairs inside a cluster (the C_= pattern) as a mask.
  PairMask same_mask() const { return same_mask_; }

  friend bool operator==(const Partition& a, const Partition& b) { return a.labels_ == b.labels_; }

  std::string to_string() const;  // e.g. "{1,2}{3,4,5}{6}", 1-indexed

 private:
  std::vector<int> labels_;
  int k_ = 0;
  PairMask same_mask_ = 0;
};

/// Hidden ground truth: a clustering plus oracle probabilities.
struct Instance {
  Partition partition;
  double p = 0.0;
  double q = 0.0;

  Instance() = default;
  Instance(Partition part, double p_, double q_);

  int items() const { return partition.items(); }
  /// c_ij of the pair matrix.
  double pair_prob(const Pair& pr) const { return partition.same_cluster(pr.i, pr.j) ? p : q; }
};

enum class MoveKind { Split, Merge };

/// A merge-or-split neighbour of a partition. n1: same in source, apart in
/// result. n2: apart in source, together in result.
struct AltMove {
  MoveKind kind = MoveKind::Split;
  Partition source;
  Partition result;
  PairMask n1 = 0;
  PairMask n2 = 0;
};

std::vector<Partition> enumerate_partitions(int m, int guard = kDefaultEnumerationGuard);

/// Bell numbers in 64 bits; exact up to M = 24.
std::uint64_t bell_number(int m);

struct PairSplit {
  PairMask within = 0;  // N_p
  PairMask cross = 0;   // N_q
};
PairSplit within_cross_pairs(const Partition& part);

/// All splits of one cluster into two and all merges of two clusters.
std::vector<AltMove> min_moves(const Partition& part);

bool same_class(const Partition& a, const Partition& b);

/// Expected |min_moves(part)|: C(K,2) + sum over clusters of (2^{|g|-1} - 1).
std::size_t expected_move_count(const Partition& part);

inline int popcount(PairMask m) { return __builtin_popcountll(m); }

template <class F>
inline void for_each_bit(PairMask m, F&& f) {
  while (m != 0) {
    const int k = __builtin_ctzll(m);
    f(static_cast<std::size_t>(k));
    m &= m - 1;
  }
}

}  // namespace a3cnp
