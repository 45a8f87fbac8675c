#include "aufh/timing.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <sstream>

namespace aufh::harness {

namespace {

double median_round_us(Policy& policy, env::Environment& environment, std::int64_t rounds,
                       std::int64_t warmup) {
    using clock = std::chrono::steady_clock;
    std::vector<double> samples;
    samples.reserve(static_cast<std::size_t>(rounds));
    ArrayXd chosen_losses;
    for (std::int64_t t = 1; t <= warmup + rounds; ++t) {
        const auto t0 = clock::now();
        const Strategy chosen = policy.select();
        const env::EnvStep fb = environment.step(t, chosen);
        chosen_losses.resize(chosen.size());
        for (int j = 0; j < chosen.size(); ++j)
            chosen_losses[j] = fb.realized[chosen.members[static_cast<std::size_t>(j)]];
        policy.observe(chosen, chosen_losses);
        const auto t1 = clock::now();
        if (t > warmup)
            samples.push_back(
                std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count() / 1000.0);
    }
    auto mid = samples.begin() + static_cast<std::ptrdiff_t>(samples.size() / 2);
    std::nth_element(samples.begin(), mid, samples.end());
    return *mid;
}

}  // namespace

TimingTable timing_bench(const std::vector<std::pair<int, int>>& grid, std::int64_t rounds,
                         std::int64_t warmup, std::int64_t enumeration_cap, std::uint64_t seed) {
    TimingTable table;
    table.rounds = rounds;

    for (const auto& [n, k_r] : grid) {
        TimingRow row;
        row.n = n;
        row.k_r = k_r;
        const StrategySpace space = StrategySpace::make(n, k_r);

        env::EnvironmentSpec es;
        es.regime = env::Regime::Stochastic;
        es.n = n;
        es.delta = 0.2;
        es.seed = seed;

        {
            auto environment = env::make_environment(es);
            AufhExp3pp dp(space, Schedule::emp_experimental(), AufhExp3pp::Impl::Dp, seed);
            row.dp_us = median_round_us(dp, *environment, rounds, warmup);
        }
        if (space.enumerable(enumeration_cap)) {
            auto environment = env::make_environment(es);
            AufhExp3pp ref(space, Schedule::emp_experimental(), AufhExp3pp::Impl::Reference, seed,
                           enumeration_cap);
            row.reference_feasible = true;
            // The enumerated form is slow; cap the timed rounds to keep the
            // bench itself bounded.
            const std::int64_t ref_rounds = std::min<std::int64_t>(rounds, 300);
            row.reference_us = median_round_us(ref, *environment, ref_rounds,
                                               std::min<std::int64_t>(warmup, 32));
        }
        table.rows.push_back(row);
    }

    // Least squares of dp_us against n*k_r.
    const auto m = static_cast<double>(table.rows.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const TimingRow& r : table.rows) {
        const double x = static_cast<double>(r.n) * r.k_r;
        sx += x;
        sy += r.dp_us;
        sxx += x * x;
        sxy += x * r.dp_us;
    }
    const double denom = m * sxx - sx * sx;
    table.fit_b = (m * sxy - sx * sy) / denom;
    table.fit_a = (sy - table.fit_b * sx) / m;
    double ss_res = 0, ss_tot = 0;
    for (const TimingRow& r : table.rows) {
        const double x = static_cast<double>(r.n) * r.k_r;
        const double pred = table.fit_a + table.fit_b * x;
        ss_res += (r.dp_us - pred) * (r.dp_us - pred);
        ss_tot += (r.dp_us - sy / m) * (r.dp_us - sy / m);
    }
    table.fit_r2 = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
    return table;
}

std::string format_timing_table(const TimingTable& table) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(2);
    os << "(n,k_r)      enumerated[us]   dp[us]\n";
    for (const TimingRow& r : table.rows) {
        std::ostringstream cell;
        cell << '(' << r.n << ',' << r.k_r << ')';
        os << std::left << std::setw(13) << cell.str();
        if (r.reference_feasible)
            os << std::setw(17) << r.reference_us;
        else
            os << std::setw(17) << "infeasible";
        os << r.dp_us << '\n';
    }
    os << "dp fit: us = " << table.fit_a << " + " << table.fit_b << " * n*k_r  (R^2 = "
       << std::setprecision(4) << table.fit_r2 << ")\n";
    return os.str();
}

}  // namespace aufh::harness
