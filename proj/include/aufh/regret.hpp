#pragma once

// Regret accounting. Pseudo-regret compares expected losses of the chosen
// strategy against the best k_r-subset of the same expectations; hindsight
// regret compares realized totals.

#include <cstdint>
#include <string>
#include <vector>

#include "aufh/strategies.hpp"
#include "aufh/types.hpp"

namespace aufh {

struct RegretTrace {
    std::vector<std::int64_t> checkpoints;
    std::vector<double> pseudo_regret;
    std::vector<double> hindsight_regret;
    std::vector<double> cumulative_loss;  // policy's realized loss at each checkpoint
    int repetition = 0;
    std::string policy_id;
    std::string environment_id;
};

// Adds sum_{f in chosen} mu(f) - sum_{f in i*} mu(f) to the running total,
// where i* is the k_r channels of smallest expected loss this round.
double pseudo_regret_increment(const Strategy& chosen, const ArrayXd& expected_losses);

}  // namespace aufh
