#pragma once

#include <cstdint>
#include <span>

namespace a3cnp {

/// Bernoulli KL divergence d(x, y) in nats, with 0 ln 0 = 0. Returns +inf
/// when y sits on {0, 1} and x does not. Throws on NaN.
double kl_bern(double x, double y);

/// Binary entropy in nats.
double entropy(double x);

/// Closest member of one clustering class to a pair-probability vector.
///
/// `same` marks the pairs the class puts in one cluster (bit k = pair k).
/// The class parameters are fitted as weighted means, p' clamped to >= 1/2
/// and q' to <= 1/2, which is the exact minimiser of the weighted KL sum over
/// the class. Returns sum_k w_k d(c_k, c'_k). Pairs with zero weight never
/// contribute, even where the divergence is infinite.
double best_fit_divergence(std::span<const double> values, std::span<const double> weights, std::uint64_t same);

}  // namespace a3cnp
