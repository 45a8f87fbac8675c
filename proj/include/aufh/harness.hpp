#pragma once

// Experiment orchestration: (policy x environment x repetition) runs with
// log-spaced regret checkpoints, deterministic per-cell seed derivation, and
// mean/std aggregation over repetitions. Pseudo-regret (against per-round
// expected losses) is the headline metric in stochastic-type regimes;
// hindsight regret (against the best fixed strategy on the realized sequence)
// is the headline in adversarial ones. Both are always recorded.

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "aufh/environments.hpp"
#include "aufh/policy.hpp"
#include "aufh/regret.hpp"
#include "aufh/schedule.hpp"
#include "aufh/types.hpp"

namespace aufh::harness {

using aufh::ArrayXd;
using aufh::Policy;
using aufh::RegretTrace;
using aufh::Strategy;
using aufh::StrategySpace;

enum class PolicyKind { Aufh, CombUcb1, Thompson, StrategyExp3, Oracle };

struct PolicySpec {
    PolicyKind kind = PolicyKind::Aufh;
    // AUFH options
    Variant variant = Variant::Emp;
    XiForm xi_form = XiForm::GapScaledLog;
    double c = 1.0 / 32.0;
    std::optional<double> eta_override;
    bool reference_impl = false;  // default: DP implementation
    // Known-gap schedule inputs; empty means "take the environment's gaps".
    std::vector<double> known_gaps;
    // mini-batching: 0 = off, >0 fixed batch, -1 derive from horizon
    std::int64_t minibatch = 0;

    std::string id() const;
};

struct ExperimentConfig {
    StrategySpace space;
    env::EnvironmentSpec environment;
    std::vector<PolicySpec> policies;
    std::int64_t horizon = 100000;
    int repetitions = 10;
    std::vector<std::int64_t> checkpoints;  // filled from horizon when empty
    std::uint64_t master_seed = 1;
    std::int64_t enumeration_cap = 1'000'000;
    int threads = 1;

    std::string run_id() const;
    void resolve();  // fills defaults (checkpoints, mixed/adaptive k_j)
    void validate() const;
};

// 10-per-decade log-spaced checkpoints up to and including the horizon.
std::vector<std::int64_t> log_checkpoints(std::int64_t horizon, int per_decade = 10);

// Proportional rescale of an explicit checkpoint list to a new horizon.
std::vector<std::int64_t> scale_checkpoints(const std::vector<std::int64_t>& checkpoints,
                                            std::int64_t old_horizon, std::int64_t new_horizon);

// Independent streams per (repetition, policy): the environment stream is
// shared by all policies of a repetition (common random numbers).
std::uint64_t derive_env_seed(std::uint64_t master, int repetition);
std::uint64_t derive_policy_seed(std::uint64_t master, int repetition, int policy_index);

std::unique_ptr<Policy> make_policy(const PolicySpec& spec, const ExperimentConfig& config,
                                    std::uint64_t seed, const env::Environment& environment);

struct PhaseTiming {
    double select_us_per_round = 0.0;
    double update_us_per_round = 0.0;
};

struct PolicyResult {
    std::string policy_id;
    std::vector<RegretTrace> reps;
    std::vector<double> pseudo_mean, pseudo_std;
    std::vector<double> hindsight_mean, hindsight_std;
    std::vector<double> cum_loss_mean;
    PhaseTiming timing;
    bool infeasible = false;       // e.g. reference form above the cap
    std::string infeasible_reason;

    // Headline regret per the regime's primary metric.
    const std::vector<double>& primary_mean(bool stochastic_metric) const {
        return stochastic_metric ? pseudo_mean : hindsight_mean;
    }
    const std::vector<double>& primary_std(bool stochastic_metric) const {
        return stochastic_metric ? pseudo_std : hindsight_std;
    }
};

struct ExperimentResults {
    ExperimentConfig config;
    std::vector<PolicyResult> policies;
    bool stochastic_metric = true;
};

ExperimentResults run_experiment(const ExperimentConfig& config);

// One (policy, repetition) cell; exposed for bespoke accounting in tests.
RegretTrace run_single(const ExperimentConfig& config, std::size_t policy_index,
                       int repetition, PhaseTiming* timing = nullptr);

}  // namespace aufh::harness
