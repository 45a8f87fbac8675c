#include "aufh/policy_state.hpp"

#include <cmath>
#include <stdexcept>

namespace aufh {

PolicyState::PolicyState(int n)
    : log_weights(ArrayXd::Zero(n)),
      cum_est_loss(ArrayXd::Zero(n)),
      gap_estimates(ArrayXd::Zero(n)),
      play_counts(static_cast<std::size_t>(n), 0) {}

const ArrayXd& PolicyState::gaps_for_next_round(const Schedule& s) const {
    if (s.variant == Variant::KnownGap) return *s.known_gaps;
    return gap_estimates;
}

ArrayXd estimate_losses(const Strategy& chosen, const ArrayXd& losses, const ArrayXd& marginals) {
    ArrayXd est = ArrayXd::Zero(marginals.size());
    for (int j = 0; j < chosen.size(); ++j) {
        const int f = chosen.members[j];
        const double q = marginals[f];
        if (!(q > 0.0))
            throw std::logic_error("chosen channel has zero marginal probability");
        est[f] = losses[j] / q;
    }
    return est;
}

void update_gap_estimates(PolicyState& state) {
    const double t = static_cast<double>(state.round);
    const double lo = state.cum_est_loss.minCoeff();
    state.gap_estimates = ((state.cum_est_loss - lo) / t).min(1.0);
}

void apply_update(PolicyState& state, const Schedule& schedule, const Strategy& chosen,
                  const ArrayXd& estimated) {
    state.cum_est_loss += estimated;
    for (int f : chosen.members) ++state.play_counts[static_cast<std::size_t>(f)];
    ++state.round;

    update_gap_estimates(state);

    const double eta_next = schedule.eta(state.round + 1, state.n());
    state.log_weights = -eta_next * (state.cum_est_loss - state.cum_est_loss.minCoeff());
}

}  // namespace aufh
