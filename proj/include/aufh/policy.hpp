#pragma once

// The AUFH-EXP3++ policy. One round is
//
//   1. p_t(i) = (1 - sum_f eps_t(f)) * w_{t-1}(i)/W_{t-1}  [+ exploration mass
//      sum of eps over owner-attributed channels when i is a covering block]
//   2. q_t(f) = sum_{i : f in i} p_t(i)
//   3. ltilde_t(f) = l_t(f)/q_t(f) on the chosen channels, 0 elsewhere
//   4. exponential-weights update of the per-channel cumulative losses
//
// The reference implementation materializes all binomial(n, k_r) strategies;
// the DP implementation draws the weight part channel-by-channel and computes
// q_t(f) from prefix/suffix tables, identical in distribution.

#include <cstdint>
#include <functional>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "aufh/dp_sampler.hpp"
#include "aufh/policy_state.hpp"
#include "aufh/schedule.hpp"
#include "aufh/strategies.hpp"
#include "aufh/types.hpp"

namespace aufh {

// Semi-bandit learner interface: select a strategy, then observe the losses
// of exactly the channels played (losses[j] belongs to played.members[j]).
class Policy {
public:
    virtual ~Policy() = default;
    virtual Strategy select() = 0;
    virtual void observe(const Strategy& played, const ArrayXd& losses) = 0;
    virtual const std::string& id() const { return id_; }
    void set_id(std::string id) { id_ = std::move(id); }

private:
    std::string id_ = "policy";
};

// Probability vector over enumerated strategies (mixture of the exponential
// weights part and covering-set exploration).
ArrayXd strategy_distribution(const std::vector<Strategy>& strategies, const StrategySpace& space,
                              const ArrayXd& log_weights, const ArrayXd& eps,
                              const CoveringSet& covering);

// q(f) = sum over strategies containing f, by brute force over the vector.
ArrayXd enumerated_marginals(const std::vector<Strategy>& strategies, const ArrayXd& probs,
                             int n);

class AufhExp3pp : public Policy {
public:
    enum class Impl { Reference, Dp };

    AufhExp3pp(StrategySpace space, Schedule schedule, Impl impl, std::uint64_t seed,
               std::int64_t enumeration_cap = 1'000'000);

    Strategy select() override;
    void observe(const Strategy& played, const ArrayXd& losses) override;

    // select -> feedback(chosen) -> observe, returning the chosen strategy.
    Strategy play_round(const std::function<ArrayXd(const Strategy&)>& feedback);

    const PolicyState& state() const { return state_; }
    const Schedule& schedule() const { return schedule_; }
    const CoveringSet& covering() const { return covering_; }

    // Exploration floor and marginals for the upcoming round (test surface).
    ArrayXd next_epsilons() const;
    ArrayXd next_marginals() const;
    // Reference implementation only: the full strategy distribution.
    ArrayXd next_distribution() const;
    const std::vector<Strategy>& strategies() const;

private:
    StrategySpace space_;
    Schedule schedule_;
    Impl impl_;
    CoveringSet covering_;
    PolicyState state_;
    std::mt19937_64 rng_;

    std::vector<Strategy> strategies_;     // reference only
    std::vector<double> block_mass_;       // scratch: exploration mass per block
    ArrayXd q_;                            // marginals of the round in flight
    bool q_valid_ = false;

    void compute_block_mass(const ArrayXd& eps);
    Strategy sample_reference(const ArrayXd& probs);
    Strategy sample_dp(const DPTables& tables, const ArrayXd& eps);
};

// Plays one fixed strategy forever (regret-accounting sanity baseline).
class FixedStrategyPolicy : public Policy {
public:
    explicit FixedStrategyPolicy(Strategy s) : strategy_(std::move(s)) { set_id("oracle"); }
    Strategy select() override { return strategy_; }
    void observe(const Strategy&, const ArrayXd&) override {}

private:
    Strategy strategy_;
};

}  // namespace aufh
