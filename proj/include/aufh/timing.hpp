#pragma once

// Per-round timing of the enumerated form against the DP form over a grid of
// (n, k_r) sizes. Enumerated entries above the cap are reported infeasible.

#include <cstdint>
#include <string>
#include <vector>

#include "aufh/harness.hpp"

namespace aufh::harness {

struct TimingRow {
    int n = 0;
    int k_r = 0;
    bool reference_feasible = false;
    double reference_us = 0.0;  // median per-round select+update, microseconds
    double dp_us = 0.0;
};

struct TimingTable {
    std::vector<TimingRow> rows;
    std::int64_t rounds = 0;
    // a + b * n * k_r least-squares fit of the DP column.
    double fit_a = 0.0;
    double fit_b = 0.0;
    double fit_r2 = 0.0;
};

TimingTable timing_bench(const std::vector<std::pair<int, int>>& grid,
                         std::int64_t rounds = 1500, std::int64_t warmup = 128,
                         std::int64_t enumeration_cap = 1'000'000, std::uint64_t seed = 7);

std::string format_timing_table(const TimingTable& table);

}  // namespace aufh::harness
