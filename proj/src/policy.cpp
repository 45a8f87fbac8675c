#include "aufh/policy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace aufh {

ArrayXd strategy_distribution(const std::vector<Strategy>& strategies, const StrategySpace& space,
                              const ArrayXd& log_weights, const ArrayXd& eps,
                              const CoveringSet& covering) {
    const auto count = static_cast<Eigen::Index>(strategies.size());
    ArrayXd log_sums(count);
    for (Eigen::Index i = 0; i < count; ++i) {
        double s = 0.0;
        for (int f : strategies[static_cast<std::size_t>(i)].members) s += log_weights[f];
        log_sums[i] = s;
    }
    const double shift = log_sums.maxCoeff();
    ArrayXd probs = (log_sums - shift).exp();
    probs /= probs.sum();
    probs *= 1.0 - eps.sum();

    for (int b = 0; b < covering.block_count(); ++b) {
        double mass = 0.0;
        for (int f : covering.blocks[b].members)
            if (covering.owner[f] == b) mass += eps[f];
        probs[strategy_rank(space, covering.blocks[b])] += mass;
    }
    return probs;
}

ArrayXd enumerated_marginals(const std::vector<Strategy>& strategies, const ArrayXd& probs,
                             int n) {
    ArrayXd q = ArrayXd::Zero(n);
    for (std::size_t i = 0; i < strategies.size(); ++i)
        for (int f : strategies[i].members) q[f] += probs[static_cast<Eigen::Index>(i)];
    return q;
}

AufhExp3pp::AufhExp3pp(StrategySpace space, Schedule schedule, Impl impl, std::uint64_t seed,
                       std::int64_t enumeration_cap)
    : space_(space),
      schedule_(std::move(schedule)),
      impl_(impl),
      covering_(build_covering_set(space)),
      state_(space.n),
      rng_(seed) {
    schedule_.validate(space.n);
    if (impl_ == Impl::Reference) {
        if (!space_.enumerable(enumeration_cap))
            throw SpaceTooLargeError("strategy space exceeds the enumeration cap; "
                                     "use the DP implementation");
        strategies_ = enumerate_strategies(space_, enumeration_cap);
    }
    block_mass_.resize(static_cast<std::size_t>(covering_.block_count()));
}

void AufhExp3pp::compute_block_mass(const ArrayXd& eps) {
    for (int b = 0; b < covering_.block_count(); ++b) {
        double mass = 0.0;
        for (int f : covering_.blocks[b].members)
            if (covering_.owner[f] == b) mass += eps[f];
        block_mass_[static_cast<std::size_t>(b)] = mass;
    }
}

ArrayXd AufhExp3pp::next_epsilons() const {
    const std::int64_t t = state_.round + 1;
    return epsilons(schedule_, t, space_.n, state_.gaps_for_next_round(schedule_));
}

ArrayXd AufhExp3pp::next_distribution() const {
    if (impl_ != Impl::Reference)
        throw std::logic_error("strategy distribution is only materialized by the "
                               "reference implementation");
    return strategy_distribution(strategies_, space_, state_.log_weights, next_epsilons(),
                                 covering_);
}

ArrayXd AufhExp3pp::next_marginals() const {
    const ArrayXd eps = next_epsilons();
    if (impl_ == Impl::Reference) {
        const ArrayXd probs =
            strategy_distribution(strategies_, space_, state_.log_weights, eps, covering_);
        return enumerated_marginals(strategies_, probs, space_.n);
    }
    const DPTables tables = build_tables(state_.log_weights, space_.k_r);
    return dp_marginals(tables, state_.log_weights, eps, covering_);
}

const std::vector<Strategy>& AufhExp3pp::strategies() const {
    if (impl_ != Impl::Reference)
        throw std::logic_error("enumerated strategies unavailable for the DP implementation");
    return strategies_;
}

Strategy AufhExp3pp::sample_reference(const ArrayXd& probs) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double u = unit(rng_);
    double acc = 0.0;
    const auto count = probs.size();
    for (Eigen::Index i = 0; i < count; ++i) {
        acc += probs[i];
        if (u < acc) return strategies_[static_cast<std::size_t>(i)];
    }
    // Residual rounding mass lands on the last strategy.
    return strategies_.back();
}

Strategy AufhExp3pp::sample_dp(const DPTables& tables, const ArrayXd& eps) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double explore_total = eps.sum();
    double u = unit(rng_);
    if (u < explore_total) {
        // Exploration component: pick a covering block by its owner mass.
        for (int b = 0; b < covering_.block_count(); ++b) {
            u -= block_mass_[static_cast<std::size_t>(b)];
            if (u < 0.0) return covering_.blocks[b];
        }
        return covering_.blocks.back();
    }
    return sample_strategy(tables, state_.log_weights, rng_);
}

Strategy AufhExp3pp::select() {
    const std::int64_t t = state_.round + 1;
    const ArrayXd eps = epsilons(schedule_, t, space_.n, state_.gaps_for_next_round(schedule_));
    compute_block_mass(eps);

    Strategy chosen;
    if (impl_ == Impl::Reference) {
        const ArrayXd probs =
            strategy_distribution(strategies_, space_, state_.log_weights, eps, covering_);
        q_ = enumerated_marginals(strategies_, probs, space_.n);
        chosen = sample_reference(probs);
    } else {
        const DPTables tables = build_tables(state_.log_weights, space_.k_r);
        q_ = dp_marginals(tables, state_.log_weights, eps, covering_);
        chosen = sample_dp(tables, eps);
    }
    q_valid_ = true;
    return chosen;
}

void AufhExp3pp::observe(const Strategy& played, const ArrayXd& losses) {
    if (!q_valid_) throw std::logic_error("observe() called before select()");
    const ArrayXd estimated = estimate_losses(played, losses, q_);
    apply_update(state_, schedule_, played, estimated);
    q_valid_ = false;
}

Strategy AufhExp3pp::play_round(const std::function<ArrayXd(const Strategy&)>& feedback) {
    Strategy chosen = select();
    observe(chosen, feedback(chosen));
    return chosen;
}

}  // namespace aufh
