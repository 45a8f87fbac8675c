#pragma once

// Enumeration of the strategy space and exact best-subset selection. Strategy
// losses decompose additively over channels, so the best k_r-subset is just
// the k_r channels with the smallest totals.

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "aufh/types.hpp"

namespace aufh {

struct SpaceTooLargeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// All binomial(n, k_r) strategies in lexicographic order.
// Throws SpaceTooLargeError when the space exceeds `cap`.
std::vector<Strategy> enumerate_strategies(const StrategySpace& space, std::int64_t cap);

// Lexicographic rank of `s` within enumerate_strategies(space, ...).
std::int64_t strategy_rank(const StrategySpace& space, const Strategy& s);

// The k_r channels with the smallest cumulative loss (ties -> lower index)
// and their summed loss.
std::pair<Strategy, double> hindsight_best(const ArrayXd& loss_totals, int k_r);

// Sum of the k_r smallest entries (the hindsight_best total without the set).
double best_subset_sum(const ArrayXd& per_channel, int k_r);

}  // namespace aufh
