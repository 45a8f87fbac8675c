#include "aufh/envelopes.hpp"

#include <cmath>
#include <stdexcept>

namespace aufh::harness {

BoundEnvelope adversarial_root_t_envelope(int n, int k_r) {
    return {"adversarial-root-t", env::Regime::AdversarialOblivious, true,
            [n, k_r](double t) { return 4.0 * k_r * std::sqrt(t * n * std::log(n)); }};
}

BoundEnvelope adaptive_two_thirds_envelope(int n, int k_r, int memory) {
    const double base = std::pow(4.0 * k_r * std::sqrt(n * std::log(n)), 2.0 / 3.0);
    return {"adaptive-two-thirds", env::Regime::AdversarialAdaptive, false,
            [memory, base](double t) { return (memory + 1) * base * std::pow(t, 2.0 / 3.0); }};
}

BoundEnvelope stochastic_polylog_envelope(int n, int k_r, double gap) {
    return {"stochastic-polylog", env::Regime::Stochastic, false, [n, k_r, gap](double t) {
                const double lt = std::log(std::max(t, 2.0));
                return n * k_r * lt * lt * lt / gap;
            }};
}

BoundEnvelope stochastic_known_gap_envelope(int n, int k_r, double gap) {
    return {"stochastic-known-gap", env::Regime::Stochastic, false, [n, k_r, gap](double t) {
                const double lt = std::log(std::max(t, 2.0));
                return n * k_r * lt * lt / gap;
            }};
}

BoundEnvelope contaminated_polylog_envelope(int n, int k_r, double gap, double zeta) {
    return {"contaminated-polylog", env::Regime::Contaminated, false,
            [n, k_r, gap, zeta](double t) {
                const double lt = std::log(std::max(t, 2.0));
                return n * k_r * lt * lt * lt / ((1.0 - 2.0 * zeta) * gap);
            }};
}

BoundEnvelope mixed_envelope(int n, int k_r, int k_j, double gap) {
    return {"mixed", env::Regime::Mixed, false, [n, k_r, k_j, gap](double t) {
                const double lt = std::log(std::max(t, 2.0));
                return (n - k_j) * k_r * lt * lt * lt / gap +
                       4.0 * k_j * std::sqrt(t * n * std::log(n));
            }};
}

BoundEnvelope mixed_adaptive_envelope(int n, int k_r, int k_j, double gap, int memory) {
    const double base = std::pow(4.0 * k_j * std::sqrt(n * std::log(n)), 2.0 / 3.0);
    return {"mixed-adaptive", env::Regime::Mixed, false,
            [n, k_r, k_j, gap, memory, base](double t) {
                const double lt = std::log(std::max(t, 2.0));
                return (n - k_j) * k_r * lt * lt * lt / gap +
                       (memory + 1) * base * std::pow(t, 2.0 / 3.0);
            }};
}

double tail_slope_per_decade(const std::vector<std::int64_t>& checkpoints,
                             const std::vector<double>& y, int tail) {
    const int count = static_cast<int>(checkpoints.size());
    const int first = std::max(0, count - tail);
    const int m = count - first;
    if (m < 2) throw std::invalid_argument("slope fit needs at least two checkpoints");

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int j = first; j < count; ++j) {
        const double x = std::log10(static_cast<double>(checkpoints[j]));
        sx += x;
        sy += y[j];
        sxx += x * x;
        sxy += x * y[j];
    }
    const double denom = m * sxx - sx * sx;
    return (m * sxy - sx * sy) / denom;
}

EnvelopeCheck check_envelope(const std::vector<std::int64_t>& checkpoints,
                             const std::vector<double>& mean_regret,
                             const BoundEnvelope& envelope, env::Regime trace_regime, int tail,
                             double tolerance) {
    if (trace_regime != envelope.regime)
        throw std::invalid_argument("envelope '" + envelope.name +
                                    "' does not apply to this regime");
    if (checkpoints.size() != mean_regret.size())
        throw std::invalid_argument("checkpoint/regret size mismatch");

    EnvelopeCheck out;
    out.envelope = envelope.name;
    out.checkpoints = checkpoints;
    out.regret = mean_regret;
    out.envelope_values.reserve(checkpoints.size());
    for (std::int64_t cp : checkpoints)
        out.envelope_values.push_back(envelope.value(static_cast<double>(cp)));

    if (envelope.absolute) {
        double worst = 0.0;
        for (std::size_t j = 0; j < checkpoints.size(); ++j)
            worst = std::max(worst, mean_regret[j] / out.envelope_values[j]);
        out.statistic = worst;
        out.passed = worst <= 1.0;
        return out;
    }

    std::vector<double> ratio(checkpoints.size());
    double tail_mean = 0.0;
    const auto first = checkpoints.size() - static_cast<std::size_t>(
                           std::min<std::size_t>(checkpoints.size(), static_cast<std::size_t>(tail)));
    for (std::size_t j = 0; j < checkpoints.size(); ++j) {
        ratio[j] = mean_regret[j] / out.envelope_values[j];
        if (j >= first) tail_mean += ratio[j];
    }
    tail_mean /= static_cast<double>(checkpoints.size() - first);
    out.statistic = tail_slope_per_decade(checkpoints, ratio, tail);
    out.passed = out.statistic <= tolerance * std::max(tail_mean, 1e-12);
    return out;
}

}  // namespace aufh::harness
