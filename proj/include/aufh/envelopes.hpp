#pragma once

// Closed-form regret envelopes used as acceptance gates. The adversarial
// root-t bound 4 k_r sqrt(t n ln n) has no free constants and is checked
// absolutely; the polylog bounds hold up to constants, so those are checked
// as order envelopes: the ratio regret(t)/shape(t) over the last checkpoints
// must not grow with t.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "aufh/environments.hpp"

namespace aufh::harness {

struct BoundEnvelope {
    std::string name;
    env::Regime regime;
    bool absolute = false;  // absolute bound vs order-only shape
    std::function<double(double t)> value;
};

// 4 k_r sqrt(t n ln n); absolute, oblivious adversarial regime.
BoundEnvelope adversarial_root_t_envelope(int n, int k_r);
// (m+1) (4 k_r sqrt(n ln n))^{2/3} t^{2/3}; adaptive adversary.
BoundEnvelope adaptive_two_thirds_envelope(int n, int k_r, int memory);
// n k_r ln(t)^3 / gap; stochastic regime order shape (empirical-gap schedule).
BoundEnvelope stochastic_polylog_envelope(int n, int k_r, double gap);
// n k_r ln(t)^2 / gap; stochastic order shape when the gaps are known.
BoundEnvelope stochastic_known_gap_envelope(int n, int k_r, double gap);
// n k_r ln(t)^3 / ((1 - 2 zeta) gap); contaminated stochastic order shape.
BoundEnvelope contaminated_polylog_envelope(int n, int k_r, double gap, double zeta);
// (n-k_j) k_r ln(t)^3 / gap + 4 k_j sqrt(t n ln n); mixed regime order shape.
BoundEnvelope mixed_envelope(int n, int k_r, int k_j, double gap);
// Mixed regime under the memory-bounded adaptive jammer:
// (n-k_j) k_r ln(t)^3 / gap + (m+1) (4 k_j sqrt(n ln n))^{2/3} t^{2/3}.
BoundEnvelope mixed_adaptive_envelope(int n, int k_r, int k_j, double gap, int memory);

struct EnvelopeCheck {
    std::string envelope;
    bool passed = false;
    // absolute: worst margin regret/envelope over all checkpoints;
    // order: fitted per-decade growth of regret/shape over the tail.
    double statistic = 0.0;
    std::vector<std::int64_t> checkpoints;
    std::vector<double> regret;
    std::vector<double> envelope_values;
};

// Absolute envelopes must dominate the regret at every checkpoint. Order
// envelopes fit the ratio regret/shape against log10(t) over the last
// `tail` checkpoints; the fitted slope may not exceed `tolerance` times the
// mean ratio per decade.
EnvelopeCheck check_envelope(const std::vector<std::int64_t>& checkpoints,
                             const std::vector<double>& mean_regret,
                             const BoundEnvelope& envelope, env::Regime trace_regime,
                             int tail = 5, double tolerance = 0.05);

// Least-squares slope of y against log10(t) over the last `tail` points.
double tail_slope_per_decade(const std::vector<std::int64_t>& checkpoints,
                             const std::vector<double>& y, int tail);

}  // namespace aufh::harness
