#pragma once

// Fast oracle and property checks: the DP sampler against the enumeration
// oracle, DP marginals against the enumerated form, estimator unbiasedness,
// and the absolute adversarial envelope on a short run. The CLI `verify`
// subcommand runs them at desk defaults; the acceptance suite reuses them at
// its own sizes.

#include <cstdint>
#include <string>
#include <vector>

#include "aufh/types.hpp"

namespace aufh::verify {

struct CheckResult {
    std::string name;
    bool passed = false;
    double worst = 0.0;  // worst observed error / margin, check-specific
    std::string detail;
};

// Path probability of every subset vs w(i)/W from direct enumeration, on
// random instances with n <= max_n, k_r <= max_k, log10-weights spanning
// `decades` orders of magnitude.
CheckResult dp_path_equivalence(int instances, double tolerance, std::uint64_t seed,
                                int max_n = 10, int max_k = 4, double decades = 10.0);

// DP marginals vs enumerated marginals, padded covering sets and nonzero
// exploration included.
CheckResult marginal_cross_check(int instances, double tolerance, std::uint64_t seed,
                                 int max_n = 10, int max_k = 4, double decades = 10.0);

// Simplex and floor invariants of the enumerated distribution on randomized
// states: sum p = 1, sum q = k_r, p(block) >= owner-attributed mass.
CheckResult simplex_invariants(int instances, double tolerance, std::uint64_t seed,
                               int max_n = 10, int max_k = 4);

// Closed-form unbiasedness plus an empirical importance-weighted mean test
// over `rounds` slots of the stochastic regime (3-sigma per channel).
CheckResult estimator_unbiasedness(std::int64_t rounds, std::uint64_t seed);

// Mean hindsight regret of the EMP schedule under the oblivious jammer stays
// below 4 k_r sqrt(t n ln n) at every checkpoint.
CheckResult adversarial_envelope(int n, int k_r, std::int64_t horizon, int repetitions,
                                 std::uint64_t seed);

// The four desk-scale checks behind `aufhsim verify`.
std::vector<CheckResult> run_all(std::uint64_t seed = 1);

}  // namespace aufh::verify
