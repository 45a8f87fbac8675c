#pragma once

// Loss generators for the wireless regimes. Rewards are Bernoulli packets in
// {0,1} with losses l = 1 - g; every suboptimal channel has reward bias 0.5
// and a designated best channel has bias 0.5 + delta. Each step yields the
// full realized loss vector (the learner must only be shown its chosen
// channels) plus the per-round expected losses used for pseudo-regret.

#include <cstdint>
#include <deque>
#include <memory>
#include <string>
#include <vector>

#include "aufh/types.hpp"

namespace aufh::env {

using aufh::ArrayXd;
using aufh::Strategy;

enum class Regime { Stochastic, AdversarialOblivious, AdversarialAdaptive, Mixed, Contaminated };
enum class ContaminationMode { Formal, Experimental };

std::string to_string(Regime r);
Regime regime_from_string(const std::string& s);

struct EnvironmentSpec {
    Regime regime = Regime::Stochastic;
    int n = 0;
    double delta = 0.2;             // gap of the best channel
    int k_j = 0;                    // jammed-channel count (mixed, adaptive)
    double zeta = 0.0;              // attacking strength (contaminated, formal)
    std::int64_t switch_round = 2500;  // contamination onset (experimental mode)
    std::int64_t tau = 0;           // contamination onset (formal mode)
    int memory = 0;                 // adaptive adversary window m
    ContaminationMode contamination = ContaminationMode::Experimental;
    std::uint64_t seed = 0;

    void validate() const;
    std::string id() const;
};

struct EnvStep {
    ArrayXd realized;  // full per-channel losses this round
    ArrayXd expected;  // per-round expected losses (conditional for adaptive)
};

class Environment {
public:
    explicit Environment(EnvironmentSpec spec) : spec_(std::move(spec)) {}
    virtual ~Environment() = default;

    int n() const { return spec_.n; }
    const EnvironmentSpec& spec() const { return spec_; }

    // Advances one slot. `t` starts at 1 and must increase by 1 per call.
    virtual EnvStep step(std::int64_t t, const Strategy& chosen) = 0;

    // Expected losses as they would stand at round t before any play
    // (adaptive regimes report their unjammed base model).
    virtual ArrayXd expected_preview(std::int64_t t) const = 0;

    // True when pseudo-regret against i.i.d. expectations is the headline
    // metric; adversarial regimes report hindsight regret instead.
    virtual bool stochastic_metric() const = 0;

protected:
    EnvironmentSpec spec_;
};

std::unique_ptr<Environment> make_environment(const EnvironmentSpec& spec);

class StochasticEnv : public Environment {
public:
    explicit StochasticEnv(EnvironmentSpec spec);
    EnvStep step(std::int64_t t, const Strategy& chosen) override;
    ArrayXd expected_preview(std::int64_t) const override { return mu_; }
    bool stochastic_metric() const override { return true; }
    int best_channel() const { return best_; }

private:
    int best_;
    ArrayXd mu_;
};

class ObliviousAdversarialEnv : public Environment {
public:
    explicit ObliviousAdversarialEnv(EnvironmentSpec spec);
    EnvStep step(std::int64_t t, const Strategy& chosen) override;
    ArrayXd expected_preview(std::int64_t t) const override;
    bool stochastic_metric() const override { return false; }

    // Relocated every other slot by the seeded block generator.
    int block_best(std::int64_t t) const;
    double block_delta(std::int64_t t) const;
};

class AdaptiveAdversarialEnv : public Environment {
public:
    explicit AdaptiveAdversarialEnv(EnvironmentSpec spec);
    EnvStep step(std::int64_t t, const Strategy& chosen) override;
    ArrayXd expected_preview(std::int64_t) const override { return mu_; }
    bool stochastic_metric() const override { return false; }

    // The k_j channels with the highest play frequency (ties -> lower index);
    // empty result for an empty window.
    static std::vector<int> targeted_channels(const std::deque<Strategy>& window, int n, int k_j);
    const std::deque<Strategy>& window() const { return window_; }

private:
    int best_;
    ArrayXd mu_;
    std::deque<Strategy> window_;
};

class MixedEnv : public Environment {
public:
    explicit MixedEnv(EnvironmentSpec spec);
    EnvStep step(std::int64_t t, const Strategy& chosen) override;
    ArrayXd expected_preview(std::int64_t t) const override;
    bool stochastic_metric() const override { return true; }

    const std::vector<int>& adversarial_channels() const { return jammed_; }
    int best_channel() const { return best_; }

private:
    int best_;
    ArrayXd mu_;                // stochastic part
    std::vector<int> jammed_;   // fixed seeded subset, sorted
    double jammed_bias(std::int64_t t, int f) const;  // reward bias on a jammed channel
};

class ContaminatedEnv : public Environment {
public:
    explicit ContaminatedEnv(EnvironmentSpec spec);
    EnvStep step(std::int64_t t, const Strategy& chosen) override;
    ArrayXd expected_preview(std::int64_t t) const override;
    bool stochastic_metric() const override { return true; }

    int best_channel(std::int64_t t) const;
    bool moderately_contaminated() const { return spec_.zeta <= 0.25; }
    // Formal mode: deterministic low-discrepancy location schedule whose
    // cumulative count tracks floor(t * delta * zeta) for every t > tau.
    bool is_contaminated(std::int64_t t, int f) const;

private:
    int best_;          // formal mode / pre-switch best
    int best_after_;    // experimental mode, post-switch best
};

}  // namespace aufh::env
