#pragma once

#include <cstdint>
#include <iosfwd>
#include <random>
#include <stdexcept>
#include <vector>

#include "a3cnp/core_model.hpp"

namespace a3cnp {

struct QueryRecord {
  std::int64_t t = 0;  // 1-based step
  Pair pair;
  int y = 0;
  friend bool operator==(const QueryRecord&, const QueryRecord&) = default;
};

class TraceMismatchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Source of noisy same-cluster answers. One instance per run.
class Oracle {
 public:
  virtual ~Oracle() = default;
  virtual int query(const Pair& pair) = 0;
  virtual int items() const = 0;
};

/// Draws Bernoulli(p) for same-cluster pairs and Bernoulli(q) otherwise.
class SimulatedOracle final : public Oracle {
 public:
  SimulatedOracle(Instance instance, std::uint64_t seed);

  int query(const Pair& pair) override;
  int items() const override { return instance_.items(); }
  const Instance& instance() const { return instance_; }

 private:
  Instance instance_;
  std::mt19937_64 rng_;
};

/// Replays a recorded trace. Asking for a different pair than the one
/// recorded at that step, or running past the end, throws TraceMismatchError.
class RecordedOracle final : public Oracle {
 public:
  RecordedOracle(int items, std::vector<QueryRecord> records);

  int query(const Pair& pair) override;
  int items() const override { return m_; }
  std::size_t consumed() const { return pos_; }

 private:
  int m_;
  std::vector<QueryRecord> records_;
  std::size_t pos_ = 0;
};

/// `t,i,j,y` with 1-indexed items.
void write_trace_csv(std::ostream& os, const std::vector<QueryRecord>& records);
std::vector<QueryRecord> read_trace_csv(std::istream& is);

}  // namespace a3cnp
