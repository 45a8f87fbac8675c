#include "aufh/environments.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "aufh/rng.hpp"

namespace aufh::env {

namespace {

// Key tags keep the independent generator streams apart.
constexpr std::uint64_t kLossTag = 0x10c5;
constexpr std::uint64_t kBestTag = 0xbe57;
constexpr std::uint64_t kBlockBestTag = 0x0b1b;
constexpr std::uint64_t kBlockDeltaTag = 0x0b1d;
constexpr std::uint64_t kSubsetTag = 0x5e7;

// One Bernoulli packet: reward 1 with probability `reward_bias`, loss 1 - g.
double bernoulli_loss(std::uint64_t seed, std::int64_t t, int f, double reward_bias) {
    const std::uint64_t h =
        rng::key(seed ^ kLossTag, static_cast<std::uint64_t>(t), static_cast<std::uint64_t>(f));
    return rng::uniform01(h) < reward_bias ? 0.0 : 1.0;
}

int derive_best_channel(std::uint64_t seed, int n) {
    return static_cast<int>(rng::key(seed, kBestTag) % static_cast<std::uint64_t>(n));
}

ArrayXd stochastic_mu(int n, int best, double delta) {
    ArrayXd mu = ArrayXd::Constant(n, 0.5);
    mu[best] = 0.5 - delta;
    return mu;
}

}  // namespace

std::string to_string(Regime r) {
    switch (r) {
        case Regime::Stochastic: return "stochastic";
        case Regime::AdversarialOblivious: return "oblivious";
        case Regime::AdversarialAdaptive: return "adaptive";
        case Regime::Mixed: return "mixed";
        case Regime::Contaminated: return "contaminated";
    }
    return "?";
}

Regime regime_from_string(const std::string& s) {
    if (s == "stochastic") return Regime::Stochastic;
    if (s == "oblivious") return Regime::AdversarialOblivious;
    if (s == "adaptive") return Regime::AdversarialAdaptive;
    if (s == "mixed") return Regime::Mixed;
    if (s == "contaminated") return Regime::Contaminated;
    throw std::invalid_argument("unknown regime: " + s);
}

void EnvironmentSpec::validate() const {
    if (n < 2) throw std::invalid_argument("environment needs n >= 2 channels");
    if (delta < 0.0 || delta > 0.5)
        throw std::invalid_argument("delta must lie in [0, 0.5]");
    switch (regime) {
        case Regime::Stochastic: break;
        case Regime::AdversarialOblivious: break;
        case Regime::AdversarialAdaptive:
            if (memory < 1) throw std::invalid_argument("adaptive regime needs memory m >= 1");
            if (k_j < 1 || k_j > n)
                throw std::invalid_argument("adaptive regime needs 1 <= k_j <= n");
            break;
        case Regime::Mixed:
            if (k_j < 0) throw std::invalid_argument("mixed regime needs k_j >= 0");
            if (k_j >= n)
                throw std::invalid_argument(
                    "k_j >= n jams every channel; that is the adversarial regime");
            break;
        case Regime::Contaminated:
            if (contamination == ContaminationMode::Formal) {
                if (zeta < 0.0 || zeta >= 0.5)
                    throw std::invalid_argument(
                        "attacking strength zeta must lie in [0, 0.5); beyond that the "
                        "environment is severely contaminated and carries no guarantee");
                if (tau < 0) throw std::invalid_argument("tau must be >= 0");
            } else if (switch_round < 1) {
                throw std::invalid_argument("switch_round must be >= 1");
            }
            break;
    }
}

std::string EnvironmentSpec::id() const {
    std::ostringstream os;
    os << to_string(regime);
    if (regime == Regime::Contaminated)
        os << (contamination == ContaminationMode::Formal ? "-formal" : "-exp");
    os << "-n" << n;
    return os.str();
}

std::unique_ptr<Environment> make_environment(const EnvironmentSpec& spec) {
    spec.validate();
    switch (spec.regime) {
        case Regime::Stochastic: return std::make_unique<StochasticEnv>(spec);
        case Regime::AdversarialOblivious:
            return std::make_unique<ObliviousAdversarialEnv>(spec);
        case Regime::AdversarialAdaptive:
            return std::make_unique<AdaptiveAdversarialEnv>(spec);
        case Regime::Mixed: return std::make_unique<MixedEnv>(spec);
        case Regime::Contaminated: return std::make_unique<ContaminatedEnv>(spec);
    }
    throw std::invalid_argument("unknown regime");
}

// --- stochastic ---

StochasticEnv::StochasticEnv(EnvironmentSpec spec)
    : Environment(std::move(spec)),
      best_(derive_best_channel(spec_.seed, spec_.n)),
      mu_(stochastic_mu(spec_.n, best_, spec_.delta)) {}

EnvStep StochasticEnv::step(std::int64_t t, const Strategy&) {
    EnvStep out;
    out.realized.resize(spec_.n);
    for (int f = 0; f < spec_.n; ++f)
        out.realized[f] = bernoulli_loss(spec_.seed, t, f, 1.0 - mu_[f]);
    out.expected = mu_;
    return out;
}

// --- oblivious adversarial ---

ObliviousAdversarialEnv::ObliviousAdversarialEnv(EnvironmentSpec spec)
    : Environment(std::move(spec)) {}

int ObliviousAdversarialEnv::block_best(std::int64_t t) const {
    const auto block = static_cast<std::uint64_t>((t - 1) / 2);
    return static_cast<int>(rng::key(spec_.seed ^ kBlockBestTag, block) %
                            static_cast<std::uint64_t>(spec_.n));
}

double ObliviousAdversarialEnv::block_delta(std::int64_t t) const {
    const auto block = static_cast<std::uint64_t>((t - 1) / 2);
    return 0.1 + 0.2 * rng::uniform01(rng::key(spec_.seed ^ kBlockDeltaTag, block));
}

ArrayXd ObliviousAdversarialEnv::expected_preview(std::int64_t t) const {
    const int best = block_best(t);
    const double delta = block_delta(t);
    ArrayXd mu = ArrayXd::Constant(spec_.n, 0.5);
    mu[best] = 0.5 - delta;
    return mu;
}

EnvStep ObliviousAdversarialEnv::step(std::int64_t t, const Strategy&) {
    EnvStep out;
    out.expected = expected_preview(t);
    out.realized.resize(spec_.n);
    for (int f = 0; f < spec_.n; ++f)
        out.realized[f] = bernoulli_loss(spec_.seed, t, f, 1.0 - out.expected[f]);
    return out;
}

// --- adaptive adversarial ---

AdaptiveAdversarialEnv::AdaptiveAdversarialEnv(EnvironmentSpec spec)
    : Environment(std::move(spec)),
      best_(derive_best_channel(spec_.seed, spec_.n)),
      mu_(stochastic_mu(spec_.n, best_, spec_.delta)) {}

std::vector<int> AdaptiveAdversarialEnv::targeted_channels(const std::deque<Strategy>& window,
                                                           int n, int k_j) {
    if (window.empty()) return {};
    std::vector<std::int64_t> counts(static_cast<std::size_t>(n), 0);
    for (const Strategy& s : window)
        for (int f : s.members) ++counts[static_cast<std::size_t>(f)];
    std::vector<int> idx(static_cast<std::size_t>(n));
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
        return counts[static_cast<std::size_t>(a)] > counts[static_cast<std::size_t>(b)];
    });
    idx.resize(static_cast<std::size_t>(std::min(k_j, n)));
    std::sort(idx.begin(), idx.end());
    return idx;
}

EnvStep AdaptiveAdversarialEnv::step(std::int64_t t, const Strategy& chosen) {
    const std::vector<int> jam = targeted_channels(window_, spec_.n, spec_.k_j);

    EnvStep out;
    out.realized.resize(spec_.n);
    out.expected = mu_;
    for (int f = 0; f < spec_.n; ++f)
        out.realized[f] = bernoulli_loss(spec_.seed, t, f, 1.0 - mu_[f]);
    for (int f : jam) {
        out.realized[f] = 1.0;  // full packet loss on jammed channels
        out.expected[f] = 1.0;
    }

    window_.push_back(chosen);
    if (static_cast<int>(window_.size()) > spec_.memory) window_.pop_front();
    return out;
}

// --- mixed adversarial and stochastic ---

MixedEnv::MixedEnv(EnvironmentSpec spec)
    : Environment(std::move(spec)),
      best_(derive_best_channel(spec_.seed, spec_.n)),
      mu_(stochastic_mu(spec_.n, best_, spec_.delta)) {
    // Fixed seeded subset of jammed channels, drawn from the non-best channels
    // so the stochastic part keeps its gap structure.
    std::vector<int> pool;
    pool.reserve(static_cast<std::size_t>(spec_.n - 1));
    for (int f = 0; f < spec_.n; ++f)
        if (f != best_) pool.push_back(f);
    for (int j = 0; j < spec_.k_j; ++j) {
        const auto pick = static_cast<std::size_t>(
            rng::key(spec_.seed ^ kSubsetTag, static_cast<std::uint64_t>(j)) % pool.size());
        jammed_.push_back(pool[pick]);
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));
    }
    std::sort(jammed_.begin(), jammed_.end());
}

double MixedEnv::jammed_bias(std::int64_t t, int f) const {
    // The oblivious block generator restricted to the jammed subset: one of
    // the jammed channels is favored per block, the rest sit at bias 0.5.
    const auto block = static_cast<std::uint64_t>((t - 1) / 2);
    const auto k_j = static_cast<std::uint64_t>(jammed_.size());
    const int favored =
        jammed_[static_cast<std::size_t>(rng::key(spec_.seed ^ kBlockBestTag, block) % k_j)];
    if (f != favored) return 0.5;
    return 0.5 + 0.1 + 0.2 * rng::uniform01(rng::key(spec_.seed ^ kBlockDeltaTag, block));
}

ArrayXd MixedEnv::expected_preview(std::int64_t t) const {
    ArrayXd mu = mu_;
    for (int f : jammed_) mu[f] = 1.0 - jammed_bias(t, f);
    return mu;
}

EnvStep MixedEnv::step(std::int64_t t, const Strategy&) {
    EnvStep out;
    out.expected = expected_preview(t);
    out.realized.resize(spec_.n);
    for (int f = 0; f < spec_.n; ++f)
        out.realized[f] = bernoulli_loss(spec_.seed, t, f, 1.0 - out.expected[f]);
    return out;
}

// --- contaminated stochastic ---

ContaminatedEnv::ContaminatedEnv(EnvironmentSpec spec)
    : Environment(std::move(spec)), best_(derive_best_channel(spec_.seed, spec_.n)) {
    best_after_ = static_cast<int>(rng::key(spec_.seed ^ kSubsetTag, kBestTag) %
                                   static_cast<std::uint64_t>(spec_.n - 1));
    if (best_after_ >= best_) ++best_after_;  // distinct from the pre-switch best
}

int ContaminatedEnv::best_channel(std::int64_t t) const {
    if (spec_.contamination == ContaminationMode::Experimental && t > spec_.switch_round)
        return best_after_;
    return best_;
}

ArrayXd ContaminatedEnv::expected_preview(std::int64_t t) const {
    return stochastic_mu(spec_.n, best_channel(t), spec_.delta);
}

bool ContaminatedEnv::is_contaminated(std::int64_t t, int f) const {
    if (spec_.contamination != ContaminationMode::Formal) return false;
    if (t <= spec_.tau) return false;
    (void)f;  // every channel shares the gap delta here, so one rate serves all
    const double rate = spec_.delta * spec_.zeta;
    return std::floor(static_cast<double>(t) * rate) >
           std::floor(static_cast<double>(t - 1) * rate);
}

EnvStep ContaminatedEnv::step(std::int64_t t, const Strategy&) {
    EnvStep out;
    out.expected = expected_preview(t);
    out.realized.resize(spec_.n);
    for (int f = 0; f < spec_.n; ++f)
        out.realized[f] = bernoulli_loss(spec_.seed, t, f, 1.0 - out.expected[f]);
    if (spec_.contamination == ContaminationMode::Formal) {
        for (int f = 0; f < spec_.n; ++f) {
            if (!is_contaminated(t, f)) continue;
            // Worst-case flip: the best channel looks bad, suboptimal ones look good.
            out.realized[f] = (f == best_) ? 1.0 : 0.0;
        }
    }
    return out;
}

}  // namespace aufh::env
