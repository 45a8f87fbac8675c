#pragma once

// O(n * k_r) weighted k-subset machinery. Two tables over log-domain channel
// weights lw(f):
//
//   suffix(f, k) = log sum over k-subsets of channels {f..n-1} of prod weights
//   prefix(f, k) = log sum over k-subsets of channels {0..f-1} of prod weights
//
// built with the recursions
//   suffix(f, k) = logaddexp(suffix(f+1, k), lw(f) + suffix(f+1, k-1))
//   prefix(f, k) = logaddexp(prefix(f-1, k), lw(f-1) + prefix(f-1, k-1))
//
// Scanning channels in increasing index order and accepting channel f with
// probability w(f)*Suffix(f+1, r-1)/Suffix(f, r) (r slots still open) draws a
// k_r-subset i with probability exactly prod_{f in i} w(f) / Suffix(0, k_r),
// i.e. the same distribution the enumerated form samples from. Marginals come
// from one prefix*w*suffix sweep.

#include <cstdint>
#include <random>

#include "aufh/types.hpp"

namespace aufh {

double logaddexp(double a, double b);

struct DPTables {
    Eigen::ArrayXXd suffix;  // (n+1) x (k_r+1), log domain
    Eigen::ArrayXXd prefix;  // (n+1) x (k_r+1), log domain
    int n = 0;
    int k_r = 0;

    double log_total() const { return suffix(0, k_r); }
};

// log_weights need not be normalized; any real values are accepted.
DPTables build_tables(const ArrayXd& log_weights, int k_r);

// Draws exactly k_r channels. `uniform` must yield U(0,1) variates.
template <class Rng>
Strategy sample_strategy(const DPTables& tables, const ArrayXd& log_weights, Rng& rng);

// Probability that the channel-by-channel scan emits exactly `s`
// (product of the per-channel accept/skip probabilities along the path).
double log_path_probability(const DPTables& tables, const ArrayXd& log_weights,
                            const Strategy& s);

// Acceptance probability for channel f when r slots remain open, with the
// guards used by the sampler (forced accept when channels run out, uniform
// fallback when the remaining weight underflows to zero).
double acceptance_probability(const DPTables& tables, const ArrayXd& log_weights, int f, int r);

// Per-channel selection probabilities q(f) of the mixed distribution
// (1 - sum eps) * weight-part + covering exploration mass.
ArrayXd dp_marginals(const DPTables& tables, const ArrayXd& log_weights, const ArrayXd& eps,
                     const CoveringSet& covering);

// --- implementation ---

template <class Rng>
Strategy sample_strategy(const DPTables& tables, const ArrayXd& log_weights, Rng& rng) {
    const int n = tables.n;
    const int k_r = tables.k_r;
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    std::vector<int> members;
    members.reserve(k_r);
    int r = k_r;  // slots still open
    for (int f = 0; f < n && r > 0; ++f) {
        const double accept = acceptance_probability(tables, log_weights, f, r);
        if (unit(rng) < accept) {
            members.push_back(f);
            --r;
        }
    }
    return Strategy(std::move(members));
}

}  // namespace aufh
