#pragma once

// Comparison policies: CombUCB1 (index-based, per-channel confidence radius
// sqrt(1.5 ln t / T(f))), combinatorial Thompson sampling with Beta(1,1)
// priors, and EXP3 run over the enumerated strategy set (no channel sharing,
// which is exactly the inefficiency the channel-level algorithm removes).
// Plus the mini-batch wrapper that freezes the inner policy's choice for
// tau consecutive slots and feeds it the batch-average loss.

#include <cstdint>
#include <memory>
#include <random>
#include <vector>

#include "aufh/policy.hpp"
#include "aufh/strategies.hpp"
#include "aufh/types.hpp"

namespace aufh::baselines {

using aufh::ArrayXd;
using aufh::Policy;
using aufh::Strategy;
using aufh::StrategySpace;

class CombUcb1Policy : public Policy {
public:
    CombUcb1Policy(StrategySpace space, std::uint64_t seed);
    Strategy select() override;
    void observe(const Strategy& played, const ArrayXd& losses) override;

    // UCB indexes on mean rewards; defined once the init sweep is done.
    ArrayXd indexes(std::int64_t t) const;
    const ArrayXd& mean_rewards() const { return mean_reward_; }
    const std::vector<std::int64_t>& pull_counts() const { return pulls_; }

private:
    StrategySpace space_;
    CoveringSet covering_;
    ArrayXd mean_reward_;
    std::vector<std::int64_t> pulls_;
    std::int64_t round_ = 0;
};

class ThompsonPolicy : public Policy {
public:
    ThompsonPolicy(StrategySpace space, std::uint64_t seed);
    Strategy select() override;
    void observe(const Strategy& played, const ArrayXd& losses) override;

    const ArrayXd& alpha() const { return alpha_; }
    const ArrayXd& beta() const { return beta_; }

private:
    StrategySpace space_;
    ArrayXd alpha_;
    ArrayXd beta_;
    std::mt19937_64 rng_;
};

// EXP3 over whole strategies with uniform-mixing rate
// gamma_t = min{1, sqrt(N ln N / ((e-1) t))} and importance-weighted
// strategy losses. Refuses spaces above the enumeration cap.
class StrategyExp3Policy : public Policy {
public:
    StrategyExp3Policy(StrategySpace space, std::uint64_t seed,
                       std::int64_t enumeration_cap = 1'000'000);
    Strategy select() override;
    void observe(const Strategy& played, const ArrayXd& losses) override;

    double gamma(std::int64_t t) const;
    ArrayXd probabilities(std::int64_t t) const;

private:
    StrategySpace space_;
    std::vector<Strategy> strategies_;
    ArrayXd log_weights_;
    std::mt19937_64 rng_;
    std::int64_t round_ = 0;
    double chosen_prob_ = 0.0;
    std::int64_t chosen_index_ = -1;
};

// tau = round((4 k_r sqrt(n ln n))^{-1/3} * horizon^{1/3}), at least 1.
std::int64_t suggested_batch_size(int n, int k_r, std::int64_t horizon);

class MiniBatchPolicy : public Policy {
public:
    MiniBatchPolicy(std::unique_ptr<Policy> inner, std::int64_t batch_size);

    // Horizon unknown: doubling epochs, each with a fresh inner policy and a
    // batch size fitted to the epoch length.
    MiniBatchPolicy(std::function<std::unique_ptr<Policy>(std::uint64_t)> inner_factory,
                    int n, int k_r, std::uint64_t seed, std::int64_t first_epoch = 1024);

    Strategy select() override;
    void observe(const Strategy& played, const ArrayXd& losses) override;

    std::int64_t batch_size() const { return batch_size_; }

private:
    std::unique_ptr<Policy> inner_;
    std::function<std::unique_ptr<Policy>(std::uint64_t)> factory_;
    int n_ = 0;
    int k_r_ = 0;
    std::uint64_t seed_ = 0;
    std::int64_t batch_size_ = 1;
    std::int64_t batch_pos_ = 0;
    std::int64_t epoch_rounds_ = 0;   // rounds remaining in the epoch (doubling mode)
    std::int64_t epoch_len_ = 0;
    int epoch_ = 0;
    Strategy frozen_;
    ArrayXd batch_losses_;

    void start_epoch();
};

}  // namespace aufh::baselines
