#include "a3cnp/oracle.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace a3cnp {

namespace {

void check_pair(const Pair& pair, int m) {
  if (!(pair.i >= 0 && pair.i < pair.j && pair.j < m))
    throw std::out_of_range("query pair (" + std::to_string(pair.i + 1) + "," + std::to_string(pair.j + 1) +
                            ") is not a valid pair of " + std::to_string(m) + " items");
}

// 53-bit uniform in [0, 1) from the raw engine output
double unit_draw(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

SimulatedOracle::SimulatedOracle(Instance instance, std::uint64_t seed) : instance_(std::move(instance)), rng_(seed) {}

int SimulatedOracle::query(const Pair& pair) {
  check_pair(pair, instance_.items());
  return unit_draw(rng_) < instance_.pair_prob(pair) ? 1 : 0;
}

RecordedOracle::RecordedOracle(int items, std::vector<QueryRecord> records) : m_(items), records_(std::move(records)) {
  for (const auto& r : records_) {
    check_pair(r.pair, m_);
    if (r.y != 0 && r.y != 1) throw std::invalid_argument("trace outcome must be 0 or 1");
  }
}

int RecordedOracle::query(const Pair& pair) {
  check_pair(pair, m_);
  if (pos_ >= records_.size())
    throw TraceMismatchError("trace exhausted after " + std::to_string(records_.size()) + " records");
  const auto& rec = records_[pos_];
  if (!(rec.pair == pair))
    throw TraceMismatchError("step " + std::to_string(rec.t) + ": trace has pair (" + std::to_string(rec.pair.i + 1) +
                             "," + std::to_string(rec.pair.j + 1) + "), run asked for (" +
                             std::to_string(pair.i + 1) + "," + std::to_string(pair.j + 1) + ")");
  ++pos_;
  return rec.y;
}

void write_trace_csv(std::ostream& os, const std::vector<QueryRecord>& records) {
  os << "t,i,j,y\n";
  for (const auto& r : records) os << r.t << ',' << r.pair.i + 1 << ',' << r.pair.j + 1 << ',' << r.y << '\n';
}

std::vector<QueryRecord> read_trace_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("trace: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "t,i,j,y") throw std::runtime_error("trace: expected header 't,i,j,y', got '" + line + "'");
  std::vector<QueryRecord> out;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream ls(line);
    QueryRecord r;
    char c1 = 0, c2 = 0, c3 = 0;
    int i = 0, j = 0;
    if (!(ls >> r.t >> c1 >> i >> c2 >> j >> c3 >> r.y) || c1 != ',' || c2 != ',' || c3 != ',')
      throw std::runtime_error("trace: malformed line " + std::to_string(lineno));
    r.pair = {i - 1, j - 1};
    out.push_back(r);
  }
  return out;
}

}  // namespace a3cnp
