#pragma once

#include <vector>

#include "a3cnp/allocation.hpp"
#include "a3cnp/estimator.hpp"

namespace a3cnp {

/// Pairs with N_ij(t) < (sqrt(t) - C(M,2)/2)_+, as pair indices.
std::vector<std::size_t> forced_set(const PairStats& stats);

/// D-tracking choice: least-sampled forced pair if any, else the pair
/// maximising t * target - N. Ties go to the lexicographically first pair.
std::size_t select_pair(const PairStats& stats, const Allocation& target);

/// Every pair once, in lexicographic order.
std::vector<Pair> init_round(int items);

}  // namespace a3cnp
