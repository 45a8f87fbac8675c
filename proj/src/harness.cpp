#include "aufh/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "aufh/baselines.hpp"
#include "aufh/rng.hpp"

namespace aufh::harness {

namespace {
constexpr std::uint64_t kEnvStream = 0xE21;
constexpr std::uint64_t kPolicyStream = 0x90C;
}  // namespace

std::string PolicySpec::id() const {
    switch (kind) {
        case PolicyKind::CombUcb1: return "combucb1";
        case PolicyKind::Thompson: return "thompson";
        case PolicyKind::StrategyExp3: return "antijam-exp3";
        case PolicyKind::Oracle: return "oracle";
        case PolicyKind::Aufh: break;
    }
    std::string s = "aufh-";
    switch (variant) {
        case Variant::Emp: s += "emp"; break;
        case Variant::Acc: s += "acc"; break;
        case Variant::KnownGap: s += "kg"; break;
    }
    if (xi_form == XiForm::LogSquared) s += "-avg";
    if (reference_impl) s += "-ref";
    if (minibatch > 0) s += "-mb" + std::to_string(minibatch);
    if (minibatch < 0) s += "-mb";
    return s;
}

std::vector<std::int64_t> log_checkpoints(std::int64_t horizon, int per_decade) {
    std::vector<std::int64_t> cps;
    const double step = std::pow(10.0, 1.0 / per_decade);
    double x = 10.0;
    while (x < static_cast<double>(horizon)) {
        const auto cp = static_cast<std::int64_t>(std::llround(x));
        if (cps.empty() || cp > cps.back()) cps.push_back(std::min(cp, horizon));
        x *= step;
    }
    if (cps.empty() || cps.back() != horizon) cps.push_back(horizon);
    return cps;
}

std::vector<std::int64_t> scale_checkpoints(const std::vector<std::int64_t>& checkpoints,
                                            std::int64_t old_horizon, std::int64_t new_horizon) {
    std::vector<std::int64_t> out;
    const double ratio = static_cast<double>(new_horizon) / static_cast<double>(old_horizon);
    for (std::int64_t cp : checkpoints) {
        const auto scaled = std::max<std::int64_t>(
            1, std::llround(static_cast<double>(cp) * ratio));
        if (out.empty() || scaled > out.back()) out.push_back(std::min(scaled, new_horizon));
    }
    if (out.empty() || out.back() != new_horizon) out.push_back(new_horizon);
    return out;
}

std::uint64_t derive_env_seed(std::uint64_t master, int repetition) {
    return rng::key(master ^ kEnvStream, static_cast<std::uint64_t>(repetition));
}

std::uint64_t derive_policy_seed(std::uint64_t master, int repetition, int policy_index) {
    return rng::key(master ^ kPolicyStream, static_cast<std::uint64_t>(repetition),
                    static_cast<std::uint64_t>(policy_index));
}

std::string ExperimentConfig::run_id() const {
    std::ostringstream os;
    os << environment.id() << "-k" << space.k_r << "-h" << horizon << "-s" << master_seed;
    return os.str();
}

void ExperimentConfig::resolve() {
    environment.n = space.n;
    if (environment.regime == env::Regime::AdversarialAdaptive && environment.k_j == 0)
        environment.k_j = space.k_r;  // jam as many channels as the receiver uses
    if (checkpoints.empty()) checkpoints = log_checkpoints(horizon);
}

void ExperimentConfig::validate() const {
    if (repetitions < 1) throw std::invalid_argument("repetitions must be >= 1");
    if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
    if (policies.empty()) throw std::invalid_argument("no policies configured");
    if (checkpoints.empty() || checkpoints.back() > horizon)
        throw std::invalid_argument("checkpoints must be resolved and end <= horizon");
    for (std::size_t j = 1; j < checkpoints.size(); ++j)
        if (checkpoints[j] <= checkpoints[j - 1])
            throw std::invalid_argument("checkpoints must be strictly increasing");
    environment.validate();
}

std::unique_ptr<Policy> make_policy(const PolicySpec& spec, const ExperimentConfig& config,
                                    std::uint64_t seed, const env::Environment& environment) {
    std::unique_ptr<Policy> p;
    switch (spec.kind) {
        case PolicyKind::CombUcb1:
            p = std::make_unique<baselines::CombUcb1Policy>(config.space, seed);
            break;
        case PolicyKind::Thompson:
            p = std::make_unique<baselines::ThompsonPolicy>(config.space, seed);
            break;
        case PolicyKind::StrategyExp3:
            p = std::make_unique<baselines::StrategyExp3Policy>(config.space, seed,
                                                                config.enumeration_cap);
            break;
        case PolicyKind::Oracle: {
            auto [best, total] =
                hindsight_best(environment.expected_preview(1), config.space.k_r);
            (void)total;
            p = std::make_unique<FixedStrategyPolicy>(best);
            break;
        }
        case PolicyKind::Aufh: {
            Schedule sched;
            sched.variant = spec.variant;
            sched.xi_form = spec.xi_form;
            sched.c = spec.c;
            sched.eta_override = spec.eta_override;
            if (spec.variant == Variant::KnownGap) {
                if (!spec.known_gaps.empty()) {
                    sched.known_gaps = Eigen::Map<const ArrayXd>(
                        spec.known_gaps.data(),
                        static_cast<Eigen::Index>(spec.known_gaps.size()));
                } else {
                    const ArrayXd mu = environment.expected_preview(1);
                    sched.known_gaps = mu - mu.minCoeff();
                }
            }
            const auto impl =
                spec.reference_impl ? AufhExp3pp::Impl::Reference : AufhExp3pp::Impl::Dp;
            p = std::make_unique<AufhExp3pp>(config.space, sched, impl, seed,
                                             config.enumeration_cap);
            break;
        }
    }
    if (spec.minibatch != 0) {
        const std::int64_t tau =
            spec.minibatch > 0
                ? spec.minibatch
                : baselines::suggested_batch_size(config.space.n, config.space.k_r,
                                                  config.horizon);
        p = std::make_unique<baselines::MiniBatchPolicy>(std::move(p), tau);
    }
    p->set_id(spec.id());
    return p;
}

RegretTrace run_single(const ExperimentConfig& config, std::size_t policy_index, int repetition,
                       PhaseTiming* timing) {
    const PolicySpec& pspec = config.policies.at(policy_index);
    const auto environment = env::make_environment([&] {
        env::EnvironmentSpec es = config.environment;
        es.seed = derive_env_seed(config.master_seed, repetition);
        return es;
    }());
    auto policy = make_policy(
        pspec, config,
        derive_policy_seed(config.master_seed, repetition, static_cast<int>(policy_index)),
        *environment);

    const int n = config.space.n;
    const int k_r = config.space.k_r;
    ArrayXd realized_totals = ArrayXd::Zero(n);
    double policy_loss = 0.0;
    double pseudo = 0.0;

    RegretTrace trace;
    trace.checkpoints = config.checkpoints;
    trace.repetition = repetition;
    trace.policy_id = policy->id();
    trace.environment_id = config.environment.id();

    using clock = std::chrono::steady_clock;
    std::int64_t select_ns = 0, update_ns = 0;
    ArrayXd chosen_losses(k_r);

    std::size_t next_cp = 0;
    for (std::int64_t t = 1; t <= config.horizon; ++t) {
        const auto t0 = clock::now();
        const Strategy chosen = policy->select();
        const auto t1 = clock::now();

        const env::EnvStep fb = environment->step(t, chosen);
        for (int j = 0; j < k_r; ++j) {
            chosen_losses[j] = fb.realized[chosen.members[static_cast<std::size_t>(j)]];
            policy_loss += chosen_losses[j];
        }
        realized_totals += fb.realized;
        pseudo += pseudo_regret_increment(chosen, fb.expected);

        const auto t2 = clock::now();
        policy->observe(chosen, chosen_losses);
        const auto t3 = clock::now();

        select_ns += std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count();
        update_ns += std::chrono::duration_cast<std::chrono::nanoseconds>(t3 - t2).count();

        if (next_cp < config.checkpoints.size() && t == config.checkpoints[next_cp]) {
            trace.pseudo_regret.push_back(pseudo);
            trace.hindsight_regret.push_back(policy_loss -
                                             hindsight_best(realized_totals, k_r).second);
            trace.cumulative_loss.push_back(policy_loss);
            ++next_cp;
        }
    }

    if (timing) {
        timing->select_us_per_round =
            static_cast<double>(select_ns) / 1000.0 / static_cast<double>(config.horizon);
        timing->update_us_per_round =
            static_cast<double>(update_ns) / 1000.0 / static_cast<double>(config.horizon);
    }
    return trace;
}

namespace {

void aggregate(PolicyResult& result, std::size_t num_checkpoints) {
    const auto reps = static_cast<double>(result.reps.size());
    result.pseudo_mean.assign(num_checkpoints, 0.0);
    result.pseudo_std.assign(num_checkpoints, 0.0);
    result.hindsight_mean.assign(num_checkpoints, 0.0);
    result.hindsight_std.assign(num_checkpoints, 0.0);
    result.cum_loss_mean.assign(num_checkpoints, 0.0);

    for (std::size_t c = 0; c < num_checkpoints; ++c) {
        double ps = 0, hs = 0, ls = 0;
        for (const RegretTrace& tr : result.reps) {
            ps += tr.pseudo_regret[c];
            hs += tr.hindsight_regret[c];
            ls += tr.cumulative_loss[c];
        }
        result.pseudo_mean[c] = ps / reps;
        result.hindsight_mean[c] = hs / reps;
        result.cum_loss_mean[c] = ls / reps;
        if (result.reps.size() > 1) {
            double pv = 0, hv = 0;
            for (const RegretTrace& tr : result.reps) {
                pv += (tr.pseudo_regret[c] - result.pseudo_mean[c]) *
                      (tr.pseudo_regret[c] - result.pseudo_mean[c]);
                hv += (tr.hindsight_regret[c] - result.hindsight_mean[c]) *
                      (tr.hindsight_regret[c] - result.hindsight_mean[c]);
            }
            result.pseudo_std[c] = std::sqrt(pv / (reps - 1.0));
            result.hindsight_std[c] = std::sqrt(hv / (reps - 1.0));
        }
    }
}

}  // namespace

ExperimentResults run_experiment(const ExperimentConfig& input) {
    ExperimentConfig config = input;
    config.resolve();
    config.validate();

    ExperimentResults results;
    results.config = config;
    {
        env::EnvironmentSpec probe = config.environment;
        probe.seed = 0;
        results.stochastic_metric = env::make_environment(probe)->stochastic_metric();
    }
    results.policies.resize(config.policies.size());

    struct Cell {
        std::size_t policy;
        int rep;
    };
    std::vector<Cell> cells;
    for (std::size_t p = 0; p < config.policies.size(); ++p) {
        results.policies[p].policy_id = config.policies[p].id();
        results.policies[p].reps.resize(static_cast<std::size_t>(config.repetitions));
        for (int r = 0; r < config.repetitions; ++r) cells.push_back({p, r});
    }

    std::vector<PhaseTiming> timings(cells.size());
    std::vector<std::string> failures(cells.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        while (true) {
            const std::size_t j = next.fetch_add(1);
            if (j >= cells.size()) break;
            const auto [p, r] = cells[j];
            try {
                results.policies[p].reps[static_cast<std::size_t>(r)] =
                    run_single(config, p, r, &timings[j]);
            } catch (const SpaceTooLargeError& e) {
                failures[j] = e.what();
            }
        }
    };

    const int threads = std::max(1, config.threads);
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < threads; ++w) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    for (std::size_t j = 0; j < cells.size(); ++j) {
        if (failures[j].empty()) continue;
        // An infeasible policy/space pairing is reported, not fatal.
        auto& pr = results.policies[cells[j].policy];
        pr.infeasible = true;
        pr.infeasible_reason = failures[j];
    }

    for (std::size_t p = 0; p < results.policies.size(); ++p) {
        auto& pr = results.policies[p];
        if (pr.infeasible) {
            pr.reps.clear();
            continue;
        }
        aggregate(pr, config.checkpoints.size());
        double sel = 0, upd = 0;
        int count = 0;
        for (std::size_t j = 0; j < cells.size(); ++j) {
            if (cells[j].policy != p) continue;
            sel += timings[j].select_us_per_round;
            upd += timings[j].update_us_per_round;
            ++count;
        }
        pr.timing.select_us_per_round = sel / count;
        pr.timing.update_us_per_round = upd / count;
    }
    return results;
}

}  // namespace aufh::harness
