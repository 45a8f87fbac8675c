#include <doctest.h>

#include <cmath>
#include <map>
#include <random>

#include "aufh/dp_sampler.hpp"
#include "aufh/policy.hpp"
#include "aufh/strategies.hpp"

using namespace aufh;

namespace {

ArrayXd log_of(std::initializer_list<double> weights) {
    ArrayXd lw(static_cast<Eigen::Index>(weights.size()));
    Eigen::Index i = 0;
    for (double w : weights) lw[i++] = std::log(w);
    return lw;
}

}  // namespace

TEST_CASE("logaddexp handles the empty-sum sentinel") {
    const double ninf = -std::numeric_limits<double>::infinity();
    CHECK(logaddexp(ninf, 0.0) == 0.0);
    CHECK(logaddexp(0.0, ninf) == 0.0);
    CHECK(logaddexp(ninf, ninf) == ninf);
    CHECK(logaddexp(std::log(2.0), std::log(3.0)) == doctest::Approx(std::log(5.0)));
    CHECK(logaddexp(1000.0, 1000.0) == doctest::Approx(1000.0 + std::log(2.0)));
}

TEST_CASE("tables count weighted subsets") {
    const auto t1 = build_tables(log_of({1, 1, 1}), 2);
    CHECK(std::exp(t1.log_total()) == doctest::Approx(3.0));  // binomial(3,2)

    const auto t2 = build_tables(log_of({2, 1, 1}), 2);
    CHECK(std::exp(t2.log_total()) == doctest::Approx(5.0));  // {01}=2,{02}=2,{12}=1

    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> lw(-6.0, 6.0);
    for (int trial = 0; trial < 30; ++trial) {
        ArrayXd v(7);
        for (int f = 0; f < 7; ++f) v[f] = lw(rng);
        const auto t = build_tables(v, 3);
        // prefix and suffix totals both count every 3-subset
        CHECK(t.suffix(0, 3) == doctest::Approx(t.prefix(7, 3)).epsilon(1e-12));
    }
}

TEST_CASE("tables reject invalid input") {
    ArrayXd lw(3);
    lw << 0.0, -std::numeric_limits<double>::infinity(), 1.0;  // a zero weight
    CHECK_THROWS_AS(build_tables(lw, 2), std::invalid_argument);
    CHECK_THROWS_AS(build_tables(ArrayXd::Zero(3), 0), std::invalid_argument);
    CHECK_THROWS_AS(build_tables(ArrayXd::Zero(3), 4), std::invalid_argument);
}

TEST_CASE("acceptance probabilities follow the suffix ratios") {
    const ArrayXd lw = log_of({2, 1, 1});
    const auto tables = build_tables(lw, 2);
    // first channel, two slots open: 2 * W({1,2},1) / W(all,2) = 4/5
    CHECK(acceptance_probability(tables, lw, 0, 2) == doctest::Approx(0.8));
    // forced acceptance when channels run out
    CHECK(acceptance_probability(tables, lw, 1, 2) == 1.0);
}

TEST_CASE("path probabilities equal subset weight over total") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> lw_dist(-11.5, 11.5);  // ~10 decades
    for (int trial = 0; trial < 40; ++trial) {
        const auto space = StrategySpace::make(5, 2);
        ArrayXd lw(5);
        for (int f = 0; f < 5; ++f) lw[f] = lw_dist(rng);
        const auto tables = build_tables(lw, 2);
        const auto strategies = enumerate_strategies(space, 100);

        double total_path = 0.0;
        for (const auto& s : strategies) {
            // oracle: w(i)/W by direct summation
            double num = 0.0;
            for (int f : s.members) num += lw[f];
            const double oracle = std::exp(num - tables.log_total());
            const double path = std::exp(log_path_probability(tables, lw, s));
            CHECK(path == doctest::Approx(oracle).epsilon(1e-10));
            total_path += path;
        }
        CHECK(total_path == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("per-channel frequency is symmetric under uniform weights") {
    const ArrayXd lw = ArrayXd::Zero(8);
    const auto tables = build_tables(lw, 4);
    std::mt19937_64 rng(31);
    const int draws = 100'000;
    ArrayXd counts = ArrayXd::Zero(8);
    for (int d = 0; d < draws; ++d) {
        const Strategy s = sample_strategy(tables, lw, rng);
        REQUIRE(s.size() == 4);
        for (int f : s.members) counts[f] += 1.0;
    }
    // q(f) = 0.5; 3 sigma of the empirical frequency
    const double sigma = std::sqrt(0.25 / draws);
    for (int f = 0; f < 8; ++f)
        CHECK(std::abs(counts[f] / draws - 0.5) < 3.0 * sigma + 1e-12);
}

TEST_CASE("empirical subset frequencies match the target distribution") {
    const ArrayXd lw = log_of({2, 1, 1});
    const auto tables = build_tables(lw, 2);
    std::mt19937_64 rng(37);
    std::map<std::vector<int>, int> counts;
    const int draws = 50'000;
    for (int d = 0; d < draws; ++d) ++counts[sample_strategy(tables, lw, rng).members];
    CHECK(counts[{0, 1}] / static_cast<double>(draws) == doctest::Approx(0.4).epsilon(0.05));
    CHECK(counts[{0, 2}] / static_cast<double>(draws) == doctest::Approx(0.4).epsilon(0.05));
    CHECK(counts[{1, 2}] / static_cast<double>(draws) == doctest::Approx(0.2).epsilon(0.05));
}

TEST_CASE("sampling survives extreme weight skews") {
    std::mt19937_64 rng(41);
    ArrayXd lw(10);
    // one weight ~ e^700 above the rest, several below double range
    lw << 700.0, -700.0, -690.0, 0.0, -710.0, 1.0, -2.0, -705.0, 3.0, -1.0;
    const auto tables = build_tables(lw, 4);
    for (int d = 0; d < 2000; ++d) {
        const Strategy s = sample_strategy(tables, lw, rng);
        CHECK(s.size() == 4);
        CHECK(s.contains(0));  // the dominant channel is effectively certain
    }
}

TEST_CASE("dp marginals agree with symmetry and enumeration") {
    const ArrayXd uniform = ArrayXd::Zero(8);
    const auto tables = build_tables(uniform, 4);
    const auto covering = build_covering_set(StrategySpace::make(8, 4));
    const ArrayXd q = dp_marginals(tables, uniform, ArrayXd::Zero(8), covering);
    for (int f = 0; f < 8; ++f) CHECK(q[f] == doctest::Approx(0.5).epsilon(1e-12));

    const ArrayXd lw = log_of({2, 1, 1});
    const auto t3 = build_tables(lw, 2);
    const auto cover3 = build_covering_set(StrategySpace::make(3, 2));
    const ArrayXd q3 = dp_marginals(t3, lw, ArrayXd::Zero(3), cover3);
    CHECK(q3[0] == doctest::Approx(0.8));
    CHECK(q3[1] == doctest::Approx(0.6));
    CHECK(q3[2] == doctest::Approx(0.6));
    CHECK(q3.sum() == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("dp marginals match the enumerated form on random instances") {
    std::mt19937_64 rng(43);
    std::uniform_int_distribution<int> pick_n(2, 10);
    std::uniform_real_distribution<double> lw_dist(-10.0, 10.0);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = pick_n(rng);
        std::uniform_int_distribution<int> pick_k(1, std::min(4, n));
        const int k = pick_k(rng);
        const auto space = StrategySpace::make(n, k);
        const auto covering = build_covering_set(space);
        ArrayXd lw(n), eps(n);
        std::uniform_real_distribution<double> eps_dist(0.0, 1.0 / (2.0 * n));
        for (int f = 0; f < n; ++f) {
            lw[f] = lw_dist(rng);
            eps[f] = eps_dist(rng);
        }
        const auto strategies = enumerate_strategies(space, 100'000);
        const ArrayXd probs = strategy_distribution(strategies, space, lw, eps, covering);
        const ArrayXd q_ref = enumerated_marginals(strategies, probs, n);
        const ArrayXd q_dp = dp_marginals(build_tables(lw, k), lw, eps, covering);
        CHECK((q_ref - q_dp).abs().maxCoeff() < 1e-9);
    }
}
