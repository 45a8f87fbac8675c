#pragma once

// Mutable learner state shared by the reference and DP implementations.
// Weights are kept in log domain and re-derived from cumulative estimated
// losses every round, so a time-varying learning rate stays consistent with
// the closed form w_t(f) = exp(-eta_t * Ltilde_t(f)). Only weight ratios
// matter downstream, which lets us rescale by the minimum cumulative loss.

#include <cstdint>
#include <vector>

#include "aufh/schedule.hpp"
#include "aufh/types.hpp"

namespace aufh {

struct PolicyState {
    ArrayXd log_weights;    // -eta_{t+1} * (Ltilde_t - min Ltilde_t); max entry is 0
    ArrayXd cum_est_loss;   // Ltilde_t(f), non-decreasing
    ArrayXd gap_estimates;  // empirical gaps in [0,1], at least one zero
    std::vector<std::int64_t> play_counts;
    std::int64_t round = 0;

    explicit PolicyState(int n);
    int n() const { return static_cast<int>(cum_est_loss.size()); }

    // Gaps in force when computing round-(round+1) exploration.
    const ArrayXd& gaps_for_next_round(const Schedule& s) const;
};

// Importance-weighted loss estimate: losses[j] is the loss of chosen.members[j].
// Zero on unobserved channels; exactly unbiased channelwise.
ArrayXd estimate_losses(const Strategy& chosen, const ArrayXd& losses, const ArrayXd& marginals);

// Folds one round of estimated losses into the state: accumulates Ltilde,
// bumps play counts and the round counter, re-derives the empirical gaps
// min{1, (Ltilde(f) - min Ltilde)/t} and the log weights for the next round.
void apply_update(PolicyState& state, const Schedule& schedule, const Strategy& chosen,
                  const ArrayXd& estimated);

// The gap-estimate refresh alone (already called by apply_update).
void update_gap_estimates(PolicyState& state);

}  // namespace aufh
