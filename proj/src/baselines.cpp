#include "aufh/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace aufh::baselines {

namespace {

// Top-k_r channels by score, ties resolved toward the lower index.
Strategy top_k(const ArrayXd& score, int k_r) {
    const int n = static_cast<int>(score.size());
    std::vector<int> idx(static_cast<std::size_t>(n));
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return score[a] > score[b]; });
    idx.resize(static_cast<std::size_t>(k_r));
    return Strategy(std::move(idx));
}

}  // namespace

// --- CombUCB1 ---

CombUcb1Policy::CombUcb1Policy(StrategySpace space, std::uint64_t seed)
    : space_(space),
      covering_(build_covering_set(space)),
      mean_reward_(ArrayXd::Zero(space.n)),
      pulls_(static_cast<std::size_t>(space.n), 0) {
    (void)seed;  // deterministic policy; ties are broken by channel index
    set_id("combucb1");
}

ArrayXd CombUcb1Policy::indexes(std::int64_t t) const {
    ArrayXd idx(space_.n);
    const double lt = std::log(static_cast<double>(std::max<std::int64_t>(t, 1)));
    for (int f = 0; f < space_.n; ++f) {
        const auto pulled = static_cast<double>(pulls_[static_cast<std::size_t>(f)]);
        idx[f] = mean_reward_[f] + std::sqrt(1.5 * lt / pulled);
    }
    return idx;
}

Strategy CombUcb1Policy::select() {
    const std::int64_t t = round_ + 1;
    // Initialization sweep: play the covering blocks until every channel has
    // been pulled at least once.
    if (t <= covering_.block_count()) return covering_.blocks[static_cast<int>(t - 1)];
    return top_k(indexes(t), space_.k_r);
}

void CombUcb1Policy::observe(const Strategy& played, const ArrayXd& losses) {
    for (int j = 0; j < played.size(); ++j) {
        const int f = played.members[static_cast<std::size_t>(j)];
        auto& pulled = pulls_[static_cast<std::size_t>(f)];
        const double reward = 1.0 - losses[j];
        ++pulled;
        mean_reward_[f] += (reward - mean_reward_[f]) / static_cast<double>(pulled);
    }
    ++round_;
}

// --- combinatorial Thompson sampling ---

ThompsonPolicy::ThompsonPolicy(StrategySpace space, std::uint64_t seed)
    : space_(space),
      alpha_(ArrayXd::Ones(space.n)),
      beta_(ArrayXd::Ones(space.n)),
      rng_(seed) {
    set_id("thompson");
}

Strategy ThompsonPolicy::select() {
    ArrayXd theta(space_.n);
    for (int f = 0; f < space_.n; ++f) {
        std::gamma_distribution<double> ga(alpha_[f], 1.0);
        std::gamma_distribution<double> gb(beta_[f], 1.0);
        const double a = ga(rng_);
        const double b = gb(rng_);
        theta[f] = a / (a + b);
    }
    return top_k(theta, space_.k_r);
}

void ThompsonPolicy::observe(const Strategy& played, const ArrayXd& losses) {
    for (int j = 0; j < played.size(); ++j) {
        const int f = played.members[static_cast<std::size_t>(j)];
        if (losses[j] < 0.5)
            alpha_[f] += 1.0;  // packet got through
        else
            beta_[f] += 1.0;
    }
}

// --- EXP3 over the enumerated strategy set ---

StrategyExp3Policy::StrategyExp3Policy(StrategySpace space, std::uint64_t seed,
                                       std::int64_t enumeration_cap)
    : space_(space), rng_(seed) {
    strategies_ = enumerate_strategies(space, enumeration_cap);
    log_weights_ = ArrayXd::Zero(static_cast<Eigen::Index>(strategies_.size()));
    set_id("antijam-exp3");
}

double StrategyExp3Policy::gamma(std::int64_t t) const {
    const auto count = static_cast<double>(strategies_.size());
    const double g = std::sqrt(count * std::log(count) /
                               ((std::exp(1.0) - 1.0) * static_cast<double>(t)));
    return std::min(1.0, g);
}

ArrayXd StrategyExp3Policy::probabilities(std::int64_t t) const {
    const double g = gamma(t);
    const auto count = log_weights_.size();
    ArrayXd p = (log_weights_ - log_weights_.maxCoeff()).exp();
    p /= p.sum();
    return (1.0 - g) * p + g / static_cast<double>(count);
}

Strategy StrategyExp3Policy::select() {
    const std::int64_t t = round_ + 1;
    const ArrayXd p = probabilities(t);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double u = unit(rng_);
    double acc = 0.0;
    chosen_index_ = p.size() - 1;
    for (Eigen::Index i = 0; i < p.size(); ++i) {
        acc += p[i];
        if (u < acc) {
            chosen_index_ = i;
            break;
        }
    }
    chosen_prob_ = p[chosen_index_];
    return strategies_[static_cast<std::size_t>(chosen_index_)];
}

void StrategyExp3Policy::observe(const Strategy& played, const ArrayXd& losses) {
    const std::int64_t t = round_ + 1;
    // Importance-weighted strategy loss, normalized to [0,1] by k_r before it
    // enters the exponent.
    const double strategy_loss = losses.sum();
    const double estimated = strategy_loss / chosen_prob_;
    const double g = gamma(t);
    log_weights_[chosen_index_] -=
        g * (estimated / space_.k_r) / static_cast<double>(strategies_.size());
    (void)played;
    ++round_;
}

// --- mini-batch wrapper ---

std::int64_t suggested_batch_size(int n, int k_r, std::int64_t horizon) {
    const double base = 4.0 * k_r * std::sqrt(n * std::log(static_cast<double>(n)));
    const double tau = std::pow(base, -1.0 / 3.0) * std::cbrt(static_cast<double>(horizon));
    return std::max<std::int64_t>(1, std::llround(tau));
}

MiniBatchPolicy::MiniBatchPolicy(std::unique_ptr<Policy> inner, std::int64_t batch_size)
    : inner_(std::move(inner)), batch_size_(std::max<std::int64_t>(1, batch_size)) {
    set_id(inner_->id() + "-mb" + std::to_string(batch_size_));
}

MiniBatchPolicy::MiniBatchPolicy(
    std::function<std::unique_ptr<Policy>(std::uint64_t)> inner_factory, int n, int k_r,
    std::uint64_t seed, std::int64_t first_epoch)
    : factory_(std::move(inner_factory)),
      n_(n),
      k_r_(k_r),
      seed_(seed),
      epoch_len_(std::max<std::int64_t>(1, first_epoch)) {
    start_epoch();
    set_id(inner_->id() + "-mb-doubling");
}

void MiniBatchPolicy::start_epoch() {
    inner_ = factory_(seed_ + static_cast<std::uint64_t>(epoch_));
    batch_size_ = suggested_batch_size(n_, k_r_, epoch_len_);
    epoch_rounds_ = epoch_len_;
    batch_pos_ = 0;
}

Strategy MiniBatchPolicy::select() {
    if (batch_pos_ == 0) {
        frozen_ = inner_->select();
        batch_losses_ = ArrayXd::Zero(frozen_.size());
    }
    return frozen_;
}

void MiniBatchPolicy::observe(const Strategy& played, const ArrayXd& losses) {
    (void)played;  // the wrapper freezes the choice, so played == frozen_
    batch_losses_ += losses;
    ++batch_pos_;

    const bool epoch_ends = factory_ && --epoch_rounds_ == 0;
    if (batch_pos_ == batch_size_ || epoch_ends) {
        inner_->observe(frozen_, batch_losses_ / static_cast<double>(batch_pos_));
        batch_pos_ = 0;
    }
    if (epoch_ends) {
        ++epoch_;
        epoch_len_ *= 2;
        start_epoch();
    }
}

}  // namespace aufh::baselines
