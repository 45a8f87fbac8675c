#include "aufh/dp_sampler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace aufh {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

double logaddexp(double a, double b) {
    if (a == kNegInf) return b;
    if (b == kNegInf) return a;
    const double hi = std::max(a, b);
    const double lo = std::min(a, b);
    return hi + std::log1p(std::exp(lo - hi));
}

DPTables build_tables(const ArrayXd& log_weights, int k_r) {
    const int n = static_cast<int>(log_weights.size());
    if (k_r < 1 || k_r > n) throw std::invalid_argument("k_r must satisfy 1 <= k_r <= n");
    if (!log_weights.isFinite().all())
        throw std::invalid_argument("log weights must be finite (weights must be positive)");

    DPTables t;
    t.n = n;
    t.k_r = k_r;
    t.suffix = Eigen::ArrayXXd::Constant(n + 1, k_r + 1, kNegInf);
    t.prefix = Eigen::ArrayXXd::Constant(n + 1, k_r + 1, kNegInf);

    for (int f = 0; f <= n; ++f) {
        t.suffix(f, 0) = 0.0;  // empty product
        t.prefix(f, 0) = 0.0;
    }
    for (int f = n - 1; f >= 0; --f) {
        const int kmax = std::min(k_r, n - f);
        for (int k = 1; k <= kmax; ++k)
            t.suffix(f, k) = logaddexp(t.suffix(f + 1, k), log_weights[f] + t.suffix(f + 1, k - 1));
    }
    for (int f = 1; f <= n; ++f) {
        const int kmax = std::min(k_r, f);
        for (int k = 1; k <= kmax; ++k)
            t.prefix(f, k) = logaddexp(t.prefix(f - 1, k), log_weights[f - 1] + t.prefix(f - 1, k - 1));
    }
    return t;
}

double acceptance_probability(const DPTables& tables, const ArrayXd& log_weights, int f, int r) {
    const int n = tables.n;
    // Exactly as many channels left as open slots: the ratio is 1 analytically,
    // clamp it so rounding can never break the k_r-cardinality postcondition.
    if (n - f == r) return 1.0;
    const double den = tables.suffix(f, r);
    if (den == kNegInf) {
        // Remaining completions all underflowed; fall back to uniform so the
        // scan still returns a full subset.
        return static_cast<double>(r) / static_cast<double>(n - f);
    }
    const double num = log_weights[f] + tables.suffix(f + 1, r - 1);
    return std::clamp(std::exp(num - den), 0.0, 1.0);
}

double log_path_probability(const DPTables& tables, const ArrayXd& log_weights,
                            const Strategy& s) {
    const int n = tables.n;
    double lp = 0.0;
    int r = tables.k_r;
    for (int f = 0; f < n && r > 0; ++f) {
        const double accept = acceptance_probability(tables, log_weights, f, r);
        if (s.contains(f)) {
            lp += std::log(accept);
            --r;
        } else {
            lp += std::log1p(-accept);
        }
    }
    return r == 0 ? lp : kNegInf;
}

ArrayXd dp_marginals(const DPTables& tables, const ArrayXd& log_weights, const ArrayXd& eps,
                     const CoveringSet& covering) {
    const int n = tables.n;
    const int k_r = tables.k_r;
    const double log_total = tables.log_total();
    const double mix = 1.0 - eps.sum();

    ArrayXd q(n);
    for (int f = 0; f < n; ++f) {
        // P(f selected by the weight part) = sum over how many members precede f.
        double weight_part = 0.0;
        for (int k = 0; k <= k_r - 1; ++k) {
            const double term =
                tables.prefix(f, k) + log_weights[f] + tables.suffix(f + 1, k_r - 1 - k);
            weight_part += std::exp(term - log_total);
        }
        q[f] = mix * std::min(weight_part, 1.0);
    }

    // Exploration mass of a block is owner-attributed, but a channel collects
    // the mass of every block it appears in (padded memberships included).
    for (int b = 0; b < covering.block_count(); ++b) {
        double mass = 0.0;
        for (int f : covering.blocks[b].members)
            if (covering.owner[f] == b) mass += eps[f];
        for (int f : covering.blocks[b].members) q[f] += mass;
    }
    return q;
}

}  // namespace aufh
