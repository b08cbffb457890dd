#include <doctest.h>

#include "a3cnp/sampling.hpp"

using namespace a3cnp;

namespace {

PairStats with_counts(int m, std::vector<std::int64_t> counts) {
  std::vector<std::int64_t> sums(counts.size(), 0);
  return PairStats::from_counts(m, std::move(counts), std::move(sums));
}

}  // namespace

TEST_CASE("forced exploration set") {
  CHECK(forced_set(PairStats(6)).empty());
  // t = 100 over 15 pairs: threshold sqrt(100) - 7.5 = 2.5
  std::vector<std::int64_t> c(15, 7);
  c[3] = 2;
  c[9] = 3;
  c[0] = 100 - 7 * 12 - 2 - 3 - 0;  // keep t = 100
  const auto s = with_counts(6, c);
  REQUIRE(s.t() == 100);
  const auto u = forced_set(s);
  REQUIRE(u.size() == 1);
  CHECK(u[0] == 3);
}

TEST_CASE("forced pair has the smallest count") {
  std::vector<std::int64_t> c(15, 8);
  c[5] = 1;
  c[7] = 0;
  c[0] = 400 - 8 * 12 - 1;
  const auto s = with_counts(6, c);
  REQUIRE(s.t() == 400);  // threshold 20 - 7.5 = 12.5
  CHECK(select_pair(s, Allocation::uniform(15)) == 7);
}

TEST_CASE("tracking choice") {
  CHECK(select_pair(with_counts(3, {2, 2, 2}), Allocation::uniform(3)) == 0);
  CHECK(select_pair(with_counts(3, {0, 1, 1}), Allocation::uniform(3)) == 0);
  CHECK(select_pair(with_counts(3, {1, 1, 4}), Allocation({0.1, 0.6, 0.3})) == 1);
  CHECK_THROWS_AS(select_pair(with_counts(3, {1, 1, 1}), Allocation::uniform(4)), std::invalid_argument);
}

TEST_CASE("tracking follows the target") {
  const Allocation target({0.5, 0.3, 0.2});
  PairStats s(3);
  for (const auto& p : init_round(3)) s.update(p, 0);
  for (int k = 0; k < 3000; ++k) s.update(s.pairs()[select_pair(s, target)], 0);
  for (std::size_t k = 0; k < 3; ++k)
    CHECK(std::abs(static_cast<double>(s.count(k)) / s.t() - target[k]) < 2.0 / s.t() + 1e-12);
}

TEST_CASE("init round") {
  const std::vector<Pair> want{{0, 1}, {0, 2}, {1, 2}};
  CHECK(init_round(3) == want);
  CHECK(init_round(6).size() == 15);
}
