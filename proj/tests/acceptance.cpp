// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Thresholds and tolerances are pinned here.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "aufh/baselines.hpp"
#include "aufh/config_json.hpp"
#include "aufh/envelopes.hpp"
#include "aufh/harness.hpp"
#include "aufh/persist.hpp"
#include "aufh/policy.hpp"
#include "aufh/timing.hpp"
#include "aufh/verify.hpp"

using namespace aufh;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool passed = false;
    std::string detail;
};

constexpr std::uint64_t kSeed = 20240801;

harness::PolicySpec emp_spec() {
    harness::PolicySpec p;
    p.kind = harness::PolicyKind::Aufh;
    p.variant = Variant::Emp;
    p.xi_form = XiForm::GapScaledLog;
    p.c = 1.0 / 32.0;
    return p;
}

std::string fmt1(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

// --- criteria 1-5 reuse the shared verification checks at criterion sizes ---

Outcome c1_dp_exactness() {
    const auto r = verify::dp_path_equivalence(200, 1e-10, kSeed, 10, 4, 10.0);
    return {r.passed, r.detail};
}

Outcome c2_marginal_cross_check() {
    const auto r = verify::marginal_cross_check(200, 1e-9, kSeed + 1, 10, 4, 10.0);
    return {r.passed, r.detail};
}

Outcome c3_simplex_invariants() {
    const auto r = verify::simplex_invariants(10'000, 1e-9, kSeed + 2, 10, 4);
    return {r.passed, r.detail};
}

Outcome c4_unbiasedness() {
    const auto r = verify::estimator_unbiasedness(100'000, kSeed + 3);
    return {r.passed, r.detail};
}

Outcome c5_adversarial_envelope() {
    const auto r = verify::adversarial_envelope(8, 4, 100'000, 10, kSeed + 4);
    return {r.passed, r.detail};
}

// --- criterion 6: stochastic desk-scale comparison ---

Outcome c6_stochastic_comparison() {
    harness::ExperimentConfig config;
    config.space = StrategySpace::make(8, 4);
    config.environment.regime = env::Regime::Stochastic;
    config.environment.delta = 0.2;
    config.horizon = 1'000'000;
    config.repetitions = 10;
    config.master_seed = kSeed + 5;
    config.threads = 2;
    config.policies.push_back(emp_spec());
    harness::PolicySpec ucb;
    ucb.kind = harness::PolicyKind::CombUcb1;
    config.policies.push_back(ucb);
    harness::PolicySpec exp3;
    exp3.kind = harness::PolicyKind::StrategyExp3;
    config.policies.push_back(exp3);

    const auto results = harness::run_experiment(config);
    const auto& cps = results.config.checkpoints;
    const auto& emp = results.policies[0].pseudo_mean;
    const auto& comb = results.policies[1].pseudo_mean;
    const auto& anti = results.policies[2].pseudo_mean;

    std::size_t idx_mid = 0;
    for (std::size_t j = 0; j < cps.size(); ++j)
        if (std::llabs(cps[j] - 100'000) < std::llabs(cps[idx_mid] - 100'000)) idx_mid = j;

    const double ratio = emp.back() / emp[idx_mid];
    const bool sublinear = ratio < 4.0;
    const bool comparable = emp.back() <= 3.0 * comb.back();
    const bool beats_exp3 = emp.back() < anti.back();

    std::ostringstream os;
    os << "emp(1e6)=" << fmt1(emp.back()) << " emp(1e5)=" << fmt1(emp[idx_mid])
       << " ratio=" << fmt1(ratio) << " (<4: " << (sublinear ? "yes" : "NO") << "); combucb1="
       << fmt1(comb.back()) << " emp<=3x: " << (comparable ? "yes" : "NO")
       << "; antijam-exp3=" << fmt1(anti.back()) << " emp<exp3: " << (beats_exp3 ? "yes" : "NO")
       << " [hindsight: emp=" << fmt1(results.policies[0].hindsight_mean.back())
       << " combucb1=" << fmt1(results.policies[1].hindsight_mean.back()) << "]";
    return {sublinear && comparable && beats_exp3, os.str()};
}

// --- criterion 7: contaminated recovery, regret vs the post-switch optimum ---

Outcome c7_contaminated_recovery() {
    const int n = 8, k_r = 2, reps = 10;
    const std::int64_t horizon = 1'000'000;
    const auto checkpoints = harness::log_checkpoints(horizon);
    std::vector<double> mean_regret(checkpoints.size(), 0.0);

    for (int rep = 0; rep < reps; ++rep) {
        env::EnvironmentSpec es;
        es.regime = env::Regime::Contaminated;
        es.contamination = env::ContaminationMode::Experimental;
        es.n = n;
        es.delta = 0.2;
        es.switch_round = 2500;
        es.seed = harness::derive_env_seed(kSeed + 6, rep);
        env::ContaminatedEnv environment(es);

        const ArrayXd mu_post = environment.expected_preview(es.switch_round + 1);
        const double post_best_sum = best_subset_sum(mu_post, k_r);

        AufhExp3pp policy(StrategySpace::make(n, k_r), Schedule::emp_experimental(),
                          AufhExp3pp::Impl::Dp, harness::derive_policy_seed(kSeed + 6, rep, 0));
        double regret = 0.0;
        ArrayXd chosen_losses(k_r);
        std::size_t next_cp = 0;
        for (std::int64_t t = 1; t <= horizon; ++t) {
            const Strategy chosen = policy.select();
            const env::EnvStep fb = environment.step(t, chosen);
            for (int j = 0; j < k_r; ++j) {
                chosen_losses[j] = fb.realized[chosen.members[static_cast<std::size_t>(j)]];
                regret += fb.expected[chosen.members[static_cast<std::size_t>(j)]];
            }
            // competitor: the optimal set of the post-switch model, priced
            // under the model in force this round
            double competitor = 0.0;
            if (t <= es.switch_round) {
                const ArrayXd& mu_now = fb.expected;
                const auto [post_best, unused] = hindsight_best(mu_post, k_r);
                (void)unused;
                for (int f : post_best.members) competitor += mu_now[f];
            } else {
                competitor = post_best_sum;
            }
            regret -= competitor;
            policy.observe(chosen, chosen_losses);
            if (next_cp < checkpoints.size() && t == checkpoints[next_cp]) {
                mean_regret[next_cp] += regret / reps;
                ++next_cp;
            }
        }
    }

    harness::BoundEnvelope linear{"linear-shape", env::Regime::Contaminated, false,
                                  [](double t) { return t; }};
    const auto check =
        harness::check_envelope(checkpoints, mean_regret, linear, env::Regime::Contaminated);
    std::ostringstream os;
    os << "regret(1e6)=" << fmt1(mean_regret.back())
       << ", tail slope of regret/t per decade = " << fmt1(check.statistic)
       << (check.passed ? " (sublinear)" : " (NOT sublinear)");
    return {check.passed, os.str()};
}

// --- criterion 8: mixed-regime decomposition ---

Outcome c8_mixed_decomposition() {
    harness::ExperimentConfig stochastic;
    stochastic.space = StrategySpace::make(8, 4);
    stochastic.environment.regime = env::Regime::Stochastic;
    stochastic.environment.delta = 0.2;
    stochastic.horizon = 20'000;
    stochastic.repetitions = 2;
    stochastic.master_seed = kSeed + 7;
    stochastic.policies.push_back(emp_spec());
    stochastic.resolve();
    stochastic.validate();

    harness::ExperimentConfig mixed0 = stochastic;
    mixed0.environment.regime = env::Regime::Mixed;
    mixed0.environment.k_j = 0;

    bool identical = true;
    for (int rep = 0; rep < stochastic.repetitions; ++rep) {
        const auto a = harness::run_single(stochastic, 0, rep);
        const auto b = harness::run_single(mixed0, 0, rep);
        identical = identical && a.pseudo_regret == b.pseudo_regret &&
                    a.hindsight_regret == b.hindsight_regret &&
                    a.cumulative_loss == b.cumulative_loss;
    }

    // k_j = 2: stochastic sub-channels keep their Bernoulli means
    env::EnvironmentSpec es;
    es.regime = env::Regime::Mixed;
    es.n = 8;
    es.delta = 0.2;
    es.k_j = 2;
    es.seed = kSeed + 8;
    env::MixedEnv environment(es);
    const ArrayXd mu = env::StochasticEnv([&] {
                           env::EnvironmentSpec s = es;
                           s.regime = env::Regime::Stochastic;
                           s.k_j = 0;
                           return s;
                       }())
                           .expected_preview(1);
    const std::int64_t rounds = 100'000;
    ArrayXd totals = ArrayXd::Zero(8);
    const Strategy probe({0, 1, 2, 3});
    for (std::int64_t t = 1; t <= rounds; ++t) totals += environment.step(t, probe).realized;

    const auto& jammed = environment.adversarial_channels();
    double worst_sigma = 0.0;
    for (int f = 0; f < 8; ++f) {
        if (std::find(jammed.begin(), jammed.end(), f) != jammed.end()) continue;
        const double sigma = std::sqrt(mu[f] * (1.0 - mu[f]) / static_cast<double>(rounds));
        worst_sigma = std::max(worst_sigma, std::abs(totals[f] / rounds - mu[f]) / sigma);
    }

    std::ostringstream os;
    os << "k_j=0 traces " << (identical ? "bit-identical" : "DIFFER") << "; k_j=2 ("
       << jammed.size() << " jammed), worst stochastic-channel deviation = " << fmt1(worst_sigma)
       << " sigma";
    return {identical && jammed.size() == 2 && worst_sigma <= 3.0, os.str()};
}

// --- criterion 9: timing surrogate ---

Outcome c9_timing() {
    const std::vector<std::pair<int, int>> grid{{12, 4}, {24, 4}, {48, 6},
                                                {48, 12}, {64, 6}, {64, 12}};
    const auto table = harness::timing_bench(grid, 4000, 256, 1'000'000, kSeed + 9);

    const harness::TimingRow* r24 = nullptr;
    const harness::TimingRow* r64 = nullptr;
    for (const auto& row : table.rows) {
        if (row.n == 24 && row.k_r == 4) r24 = &row;
        if (row.n == 64 && row.k_r == 12) r64 = &row;
    }
    const double speedup24 = r24->reference_us / r24->dp_us;
    const bool fast24 = r24->reference_feasible && speedup24 >= 10.0;
    const bool big64 = !r64->reference_feasible || r64->reference_us >= 100.0 * r64->dp_us;
    const bool linear_fit = table.fit_r2 > 0.9;

    std::ostringstream os;
    os << "(24,4): enumerated " << fmt1(r24->reference_us) << "us vs dp " << fmt1(r24->dp_us)
       << "us (x" << fmt1(speedup24) << "); (64,12): "
       << (r64->reference_feasible ? "feasible" : "infeasible above cap")
       << "; dp fit R^2=" << fmt1(table.fit_r2);
    return {fast24 && big64 && linear_fit, os.str()};
}

// --- criterion 10: adaptive-adversary degradation ---

Outcome c10_adaptive_degradation() {
    harness::ExperimentConfig adaptive;
    adaptive.space = StrategySpace::make(8, 2);
    adaptive.environment.regime = env::Regime::AdversarialAdaptive;
    adaptive.environment.memory = 80;
    adaptive.environment.k_j = 2;
    adaptive.environment.delta = 0.2;
    adaptive.horizon = 100'000;
    adaptive.repetitions = 10;
    adaptive.master_seed = kSeed + 10;
    adaptive.threads = 2;
    adaptive.policies.push_back(emp_spec());
    auto minibatched = emp_spec();
    minibatched.minibatch = -1;  // batch size derived from the horizon
    adaptive.policies.push_back(minibatched);

    harness::ExperimentConfig oblivious = adaptive;
    oblivious.environment = env::EnvironmentSpec{};
    oblivious.environment.regime = env::Regime::AdversarialOblivious;
    oblivious.environment.delta = 0.2;
    oblivious.policies = {emp_spec()};

    const auto res_adaptive = harness::run_experiment(adaptive);
    const auto res_oblivious = harness::run_experiment(oblivious);

    const double adaptive_final = res_adaptive.policies[0].hindsight_mean.back();
    const double oblivious_final = res_oblivious.policies[0].hindsight_mean.back();
    const double minibatch_final = res_adaptive.policies[1].hindsight_mean.back();

    const bool degraded = adaptive_final > oblivious_final;
    const bool recorded = std::isfinite(minibatch_final);
    std::ostringstream os;
    os << "emp hindsight: adaptive=" << fmt1(adaptive_final)
       << " vs oblivious=" << fmt1(oblivious_final) << (degraded ? " (degraded)" : " (NOT above)")
       << "; minibatched (" << res_adaptive.policies[1].policy_id
       << ") final=" << fmt1(minibatch_final);
    return {degraded && recorded, os.str()};
}

// --- criterion 11: manifest determinism ---

Outcome c11_determinism() {
    harness::ExperimentConfig config;
    config.space = StrategySpace::make(8, 4);
    config.environment.regime = env::Regime::Stochastic;
    config.environment.delta = 0.2;
    config.horizon = 20'000;
    config.repetitions = 3;
    config.master_seed = kSeed + 11;
    config.threads = 2;
    config.policies.push_back(emp_spec());
    harness::PolicySpec ucb;
    ucb.kind = harness::PolicyKind::CombUcb1;
    config.policies.push_back(ucb);

    const fs::path base = fs::path("acceptance_out");
    fs::remove_all(base);
    const auto first = harness::run_experiment(config);
    const fs::path manifest_path = harness::persist_results(first, base / "first");

    std::ifstream in(manifest_path);
    const auto manifest = cli::json::parse(in);
    const auto plan = cli::plan_from_json(manifest);
    const auto second = harness::run_experiment(plan.cells.at(0));
    harness::persist_results(second, base / "second");

    auto slurp = [](const fs::path& p) {
        std::ifstream f(p, std::ios::binary);
        std::stringstream ss;
        ss << f.rdbuf();
        return ss.str();
    };
    const std::string csv1 = slurp(base / "first" / "results.csv");
    const std::string csv2 = slurp(base / "second" / "results.csv");
    const bool same = !csv1.empty() && csv1 == csv2;
    const bool traces_same =
        slurp(base / "first" / "traces.csv") == slurp(base / "second" / "traces.csv");
    std::ostringstream os;
    os << "results.csv " << (same ? "byte-identical" : "DIFFERS") << " (" << csv1.size()
       << " bytes), traces.csv " << (traces_same ? "byte-identical" : "DIFFERS");
    return {same && traces_same, os.str()};
}

}  // namespace

int main() {
    using Criterion = std::pair<const char*, std::function<Outcome()>>;
    const std::vector<Criterion> criteria{
        {"C1 dp-sampler exactness (enumeration oracle, 1e-10)", c1_dp_exactness},
        {"C2 marginal cross-check (dp vs enumerated, 1e-9)", c2_marginal_cross_check},
        {"C3 probability-simplex and floor invariants (1e4 states)", c3_simplex_invariants},
        {"C4 estimator unbiasedness (closed form + 3-sigma empirical)", c4_unbiasedness},
        {"C5 adversarial envelope 4*k_r*sqrt(t*n*ln n) (absolute)", c5_adversarial_envelope},
        {"C6 stochastic regime comparison at desk scale", c6_stochastic_comparison},
        {"C7 contaminated recovery (post-switch sublinearity)", c7_contaminated_recovery},
        {"C8 mixed-regime decomposition", c8_mixed_decomposition},
        {"C9 timing: dp vs enumerated, linear n*k_r scaling", c9_timing},
        {"C10 adaptive-adversary degradation", c10_adaptive_degradation},
        {"C11 manifest determinism (byte-exact csv)", c11_determinism},
    };

    int failures = 0;
    for (const auto& [name, fn] : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome outcome;
        try {
            outcome = fn();
        } catch (const std::exception& e) {
            outcome = {false, std::string("exception: ") + e.what()};
        }
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::cout << (outcome.passed ? "[PASS] " : "[FAIL] ") << name << " — " << outcome.detail
                  << " [" << fmt1(seconds) << "s]" << std::endl;
        if (!outcome.passed) ++failures;
    }
    if (failures) std::cout << failures << " criterion(s) failed" << std::endl;
    return failures;
}
