#include "aufh/verify.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "aufh/dp_sampler.hpp"
#include "aufh/envelopes.hpp"
#include "aufh/harness.hpp"
#include "aufh/policy.hpp"
#include "aufh/schedule.hpp"
#include "aufh/strategies.hpp"

namespace aufh::verify {

namespace {

struct RandomInstance {
    StrategySpace space;
    ArrayXd log_weights;
    ArrayXd eps;
};

RandomInstance random_instance(std::mt19937_64& rng, int max_n, int max_k, double decades) {
    std::uniform_int_distribution<int> pick_n(2, max_n);
    const int n = pick_n(rng);
    std::uniform_int_distribution<int> pick_k(1, std::min(max_k, n));
    const int k_r = pick_k(rng);

    RandomInstance inst{StrategySpace::make(n, k_r), ArrayXd(n), ArrayXd(n)};
    const double half_span = decades * std::log(10.0) / 2.0;
    std::uniform_real_distribution<double> lw(-half_span, half_span);
    std::uniform_real_distribution<double> ex(0.0, 1.0 / (2.0 * n));
    for (int f = 0; f < n; ++f) {
        inst.log_weights[f] = lw(rng);
        inst.eps[f] = ex(rng);
    }
    return inst;
}

// Enumeration oracle: per-subset probabilities w(i)/W in long double.
std::vector<double> enumeration_probabilities(const StrategySpace& space,
                                              const ArrayXd& log_weights) {
    const auto strategies = enumerate_strategies(space, 1'000'000);
    std::vector<long double> raw(strategies.size());
    long double shift = -1e300L;
    for (std::size_t i = 0; i < strategies.size(); ++i) {
        long double s = 0;
        for (int f : strategies[i].members) s += static_cast<long double>(log_weights[f]);
        raw[i] = s;
        shift = std::max(shift, s);
    }
    long double total = 0;
    for (auto& v : raw) {
        v = std::exp(v - shift);
        total += v;
    }
    std::vector<double> probs(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i)
        probs[i] = static_cast<double>(raw[i] / total);
    return probs;
}

}  // namespace

CheckResult dp_path_equivalence(int instances, double tolerance, std::uint64_t seed, int max_n,
                                int max_k, double decades) {
    std::mt19937_64 rng(seed);
    double worst = 0.0;
    for (int trial = 0; trial < instances; ++trial) {
        const RandomInstance inst = random_instance(rng, max_n, max_k, decades);
        const auto strategies = enumerate_strategies(inst.space, 1'000'000);
        const auto oracle = enumeration_probabilities(inst.space, inst.log_weights);
        const DPTables tables = build_tables(inst.log_weights, inst.space.k_r);
        for (std::size_t i = 0; i < strategies.size(); ++i) {
            const double path =
                std::exp(log_path_probability(tables, inst.log_weights, strategies[i]));
            worst = std::max(worst, std::abs(path - oracle[i]));
        }
    }
    std::ostringstream detail;
    detail << "worst |path - w/W| = " << worst << " over " << instances << " instances";
    return {"dp-path-equivalence", worst <= tolerance, worst, detail.str()};
}

CheckResult marginal_cross_check(int instances, double tolerance, std::uint64_t seed, int max_n,
                                 int max_k, double decades) {
    std::mt19937_64 rng(seed);
    double worst = 0.0;
    bool saw_padded = false;
    for (int trial = 0; trial < instances; ++trial) {
        RandomInstance inst = random_instance(rng, max_n, max_k, decades);
        // Force a padded covering set on a third of the instances.
        if (trial % 3 == 0 && inst.space.k_r > 1 && inst.space.n % inst.space.k_r == 0) {
            const int n = inst.space.n + 1;
            if (n <= max_n + 1) {
                inst.space = StrategySpace::make(n, inst.space.k_r);
                inst.log_weights.conservativeResize(n);
                inst.eps.conservativeResize(n);
                inst.log_weights[n - 1] = 0.0;
                inst.eps[n - 1] = 1.0 / (4.0 * n);
            }
        }
        saw_padded = saw_padded || inst.space.n % inst.space.k_r != 0;

        const CoveringSet covering = build_covering_set(inst.space);
        const auto strategies = enumerate_strategies(inst.space, 1'000'000);
        const ArrayXd probs = strategy_distribution(strategies, inst.space, inst.log_weights,
                                                    inst.eps, covering);
        const ArrayXd reference = enumerated_marginals(strategies, probs, inst.space.n);
        const DPTables tables = build_tables(inst.log_weights, inst.space.k_r);
        const ArrayXd dp = dp_marginals(tables, inst.log_weights, inst.eps, covering);
        worst = std::max(worst, (reference - dp).abs().maxCoeff());
    }
    std::ostringstream detail;
    detail << "worst |q_ref - q_dp| = " << worst << " over " << instances
           << " instances (padded covering sets " << (saw_padded ? "included" : "missing") << ")";
    return {"marginal-cross-check", worst <= tolerance && saw_padded, worst, detail.str()};
}

CheckResult simplex_invariants(int instances, double tolerance, std::uint64_t seed, int max_n,
                               int max_k) {
    std::mt19937_64 rng(seed);
    double worst = 0.0;
    for (int trial = 0; trial < instances; ++trial) {
        const RandomInstance inst = random_instance(rng, max_n, max_k, 6.0);
        const CoveringSet covering = build_covering_set(inst.space);
        const auto strategies = enumerate_strategies(inst.space, 1'000'000);
        const ArrayXd probs = strategy_distribution(strategies, inst.space, inst.log_weights,
                                                    inst.eps, covering);
        const ArrayXd q = enumerated_marginals(strategies, probs, inst.space.n);

        worst = std::max(worst, std::abs(probs.sum() - 1.0));
        worst = std::max(worst, std::abs(q.sum() - inst.space.k_r));
        for (int b = 0; b < covering.block_count(); ++b) {
            double mass = 0.0;
            for (int f : covering.blocks[b].members)
                if (covering.owner[f] == b) mass += inst.eps[f];
            const double p = probs[strategy_rank(inst.space, covering.blocks[b])];
            worst = std::max(worst, mass - p);  // positive means the floor is violated
        }
    }
    std::ostringstream detail;
    detail << "worst simplex/floor violation = " << worst << " over " << instances << " states";
    return {"simplex-invariants", worst <= tolerance, worst, detail.str()};
}

CheckResult estimator_unbiasedness(std::int64_t rounds, std::uint64_t seed) {
    // Closed form: q * (l/q) + (1-q) * 0 recovers l.
    double worst_closed = 0.0;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(1e-6, 1.0);
    for (int trial = 0; trial < 1000; ++trial) {
        const double q = unit(rng);
        const double l = unit(rng);
        const double expectation = q * (l / q) + (1.0 - q) * 0.0;
        worst_closed = std::max(worst_closed, std::abs(expectation - l));
    }

    // Empirical: per-channel mean of the importance-weighted estimate over a
    // stochastic run must sit within 3 sigma of mu(f).
    const StrategySpace space = StrategySpace::make(8, 4);
    env::EnvironmentSpec es;
    es.regime = env::Regime::Stochastic;
    es.n = space.n;
    es.delta = 0.2;
    es.seed = seed;
    const auto environment = env::make_environment(es);
    AufhExp3pp policy(space, Schedule::emp_experimental(), AufhExp3pp::Impl::Dp, seed + 1);

    ArrayXd sum = ArrayXd::Zero(space.n);
    ArrayXd sum_sq = ArrayXd::Zero(space.n);
    ArrayXd chosen_losses(space.k_r);
    for (std::int64_t t = 1; t <= rounds; ++t) {
        const Strategy chosen = policy.select();
        const ArrayXd q = policy.next_marginals();  // marginals of the round in flight
        const env::EnvStep fb = environment->step(t, chosen);
        for (int j = 0; j < space.k_r; ++j)
            chosen_losses[j] = fb.realized[chosen.members[static_cast<std::size_t>(j)]];
        const ArrayXd est = estimate_losses(chosen, chosen_losses, q);
        sum += est;
        sum_sq += est.square();
        policy.observe(chosen, chosen_losses);
    }
    const ArrayXd mu = environment->expected_preview(1);
    const ArrayXd mean = sum / static_cast<double>(rounds);
    double worst_sigma = 0.0;
    for (int f = 0; f < space.n; ++f) {
        const double var =
            (sum_sq[f] / rounds - mean[f] * mean[f]) * rounds / (rounds - 1.0);
        const double sigma_mean = std::sqrt(var / static_cast<double>(rounds));
        worst_sigma = std::max(worst_sigma, std::abs(mean[f] - mu[f]) / sigma_mean);
    }

    std::ostringstream detail;
    detail << "closed-form error " << worst_closed << ", worst empirical deviation "
           << worst_sigma << " sigma over " << rounds << " rounds";
    const bool passed = worst_closed <= 1e-12 && worst_sigma <= 3.0;
    return {"estimator-unbiasedness", passed, std::max(worst_closed, worst_sigma), detail.str()};
}

CheckResult adversarial_envelope(int n, int k_r, std::int64_t horizon, int repetitions,
                                 std::uint64_t seed) {
    harness::ExperimentConfig config;
    config.space = StrategySpace::make(n, k_r);
    config.environment.regime = env::Regime::AdversarialOblivious;
    config.environment.n = n;
    config.horizon = horizon;
    config.repetitions = repetitions;
    config.master_seed = seed;
    config.threads = 2;
    harness::PolicySpec emp;
    emp.kind = harness::PolicyKind::Aufh;
    emp.variant = Variant::Emp;
    emp.xi_form = XiForm::GapScaledLog;
    emp.c = 1.0 / 32.0;
    config.policies.push_back(emp);

    const auto results = harness::run_experiment(config);
    const auto envelope = harness::adversarial_root_t_envelope(n, k_r);
    const auto check =
        harness::check_envelope(results.config.checkpoints, results.policies[0].hindsight_mean,
                                envelope, env::Regime::AdversarialOblivious);
    std::ostringstream detail;
    detail << "worst regret/envelope = " << check.statistic << " over "
           << results.config.checkpoints.size() << " checkpoints (horizon " << horizon << ")";
    return {"adversarial-envelope", check.passed, check.statistic, detail.str()};
}

std::vector<CheckResult> run_all(std::uint64_t seed) {
    return {
        dp_path_equivalence(50, 1e-10, seed),
        marginal_cross_check(50, 1e-9, seed + 1),
        estimator_unbiasedness(20'000, seed + 2),
        adversarial_envelope(8, 4, 10'000, 3, seed + 3),
    };
}

}  // namespace aufh::verify
