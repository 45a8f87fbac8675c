#include <doctest.h>

#include <cmath>
#include <random>

#include "aufh/policy.hpp"

using namespace aufh;

namespace {

ArrayXd log_weights_from(std::initializer_list<double> weights) {
    ArrayXd lw(static_cast<Eigen::Index>(weights.size()));
    Eigen::Index i = 0;
    for (double w : weights) lw[i++] = std::log(w);
    return lw;
}

}  // namespace

TEST_CASE("strategy distribution is uniform under uniform weights and no exploration") {
    const auto space = StrategySpace::make(6, 3);
    const auto strategies = enumerate_strategies(space, 100);
    const auto covering = build_covering_set(space);
    const ArrayXd probs = strategy_distribution(strategies, space, ArrayXd::Zero(6),
                                                ArrayXd::Zero(6), covering);
    for (Eigen::Index i = 0; i < probs.size(); ++i)
        CHECK(probs[i] == doctest::Approx(1.0 / 20.0));
}

TEST_CASE("strategy distribution mixes exploration mass") {
    // n=2, k_r=1: p = 0.8 * 0.5 + 0.1 on both singleton strategies
    const auto space = StrategySpace::make(2, 1);
    const auto strategies = enumerate_strategies(space, 10);
    const auto covering = build_covering_set(space);
    const ArrayXd probs = strategy_distribution(strategies, space, ArrayXd::Zero(2),
                                                ArrayXd::Constant(2, 0.1), covering);
    CHECK(probs[0] == doctest::Approx(0.5));
    CHECK(probs[1] == doctest::Approx(0.5));
    CHECK(probs.sum() == doctest::Approx(1.0));
}

TEST_CASE("dominant channels absorb the weight part") {
    const auto space = StrategySpace::make(3, 2);
    const auto strategies = enumerate_strategies(space, 10);
    const auto covering = build_covering_set(space);
    ArrayXd lw(3);
    lw << 60.0, 60.0, 0.0;  // strategy {0,1} carries essentially all weight
    ArrayXd eps = ArrayXd::Constant(3, 0.01);
    const ArrayXd probs = strategy_distribution(strategies, space, lw, eps, covering);
    const double explore_total = eps.sum();
    // {0,1} is the first covering block, so it also gets eps(0)+eps(1)
    CHECK(probs[0] == doctest::Approx((1.0 - explore_total) + 0.02).epsilon(1e-9));
}

TEST_CASE("marginals by symmetry and by enumeration") {
    const auto space = StrategySpace::make(8, 4);
    const auto strategies = enumerate_strategies(space, 100);
    const auto covering = build_covering_set(space);
    const ArrayXd probs = strategy_distribution(strategies, space, ArrayXd::Zero(8),
                                                ArrayXd::Zero(8), covering);
    const ArrayXd q = enumerated_marginals(strategies, probs, 8);
    for (int f = 0; f < 8; ++f) CHECK(q[f] == doctest::Approx(0.5));

    const auto space3 = StrategySpace::make(3, 2);
    const auto strategies3 = enumerate_strategies(space3, 10);
    const ArrayXd probs3 =
        strategy_distribution(strategies3, space3, log_weights_from({2.0, 1.0, 1.0}),
                              ArrayXd::Zero(3), build_covering_set(space3));
    const ArrayXd q3 = enumerated_marginals(strategies3, probs3, 3);
    CHECK(q3[0] == doctest::Approx(0.8));
    CHECK(q3[1] == doctest::Approx(0.6));
    CHECK(q3[2] == doctest::Approx(0.6));
}

TEST_CASE("simplex and floor invariants on random states") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> pick_n(2, 10);
    std::uniform_real_distribution<double> lw_dist(-8.0, 8.0);
    for (int trial = 0; trial < 300; ++trial) {
        const int n = pick_n(rng);
        std::uniform_int_distribution<int> pick_k(1, std::min(4, n));
        const int k = pick_k(rng);
        const auto space = StrategySpace::make(n, k);
        const auto strategies = enumerate_strategies(space, 100'000);
        const auto covering = build_covering_set(space);
        ArrayXd lw(n), eps(n);
        std::uniform_real_distribution<double> eps_dist(0.0, 1.0 / (2.0 * n));
        for (int f = 0; f < n; ++f) {
            lw[f] = lw_dist(rng);
            eps[f] = eps_dist(rng);
        }
        const ArrayXd probs = strategy_distribution(strategies, space, lw, eps, covering);
        const ArrayXd q = enumerated_marginals(strategies, probs, n);
        CHECK(probs.sum() == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(q.sum() == doctest::Approx(static_cast<double>(k)).epsilon(1e-9));
        CHECK(probs.minCoeff() >= 0.0);
        for (int b = 0; b < covering.block_count(); ++b) {
            double mass = 0;
            for (int f : covering.blocks[b].members)
                if (covering.owner[f] == b) mass += eps[f];
            CHECK(probs[strategy_rank(space, covering.blocks[b])] >= mass - 1e-12);
            // every member (padded ones included) keeps at least the block mass
            for (int f : covering.blocks[b].members) CHECK(q[f] >= mass - 1e-12);
        }
    }
}

TEST_CASE("estimate_losses divides by the marginal on chosen channels only") {
    ArrayXd q(3);
    q << 0.6, 0.5, 0.9;
    ArrayXd losses(1);
    losses << 0.3;
    const ArrayXd est = estimate_losses(Strategy({0}), losses, q);
    CHECK(est[0] == doctest::Approx(0.5));
    CHECK(est[1] == 0.0);
    CHECK(est[2] == 0.0);

    ArrayXd bad_q(2);
    bad_q << 0.0, 0.5;
    ArrayXd l(1);
    l << 0.2;
    CHECK_THROWS_AS(estimate_losses(Strategy({0}), l, bad_q), std::logic_error);
}

TEST_CASE("unbiasedness identity of the loss estimator") {
    // E[ltilde] = q * (l/q) + (1-q) * 0 = l
    for (double q : {0.1, 0.35, 0.99}) {
        for (double l : {0.0, 0.4, 1.0}) {
            CHECK(q * (l / q) + (1.0 - q) * 0.0 == doctest::Approx(l).epsilon(1e-14));
        }
    }
}

TEST_CASE("apply_update single step with unit learning rate") {
    Schedule s = Schedule::emp();
    s.eta_override = 1.0;
    PolicyState state(3);
    ArrayXd est(3);
    est << 0.5, 0.0, 0.0;
    apply_update(state, s, Strategy({0}), est);
    CHECK(state.round == 1);
    CHECK(state.play_counts[0] == 1);
    CHECK(state.play_counts[1] == 0);
    CHECK(state.log_weights[0] == doctest::Approx(-0.5));
    CHECK(state.log_weights[1] == doctest::Approx(0.0));
    CHECK(state.cum_est_loss[0] == doctest::Approx(0.5));
}

TEST_CASE("zero estimated losses only advance the round") {
    PolicyState state(4);
    const Schedule s = Schedule::emp();
    apply_update(state, s, Strategy({1, 2}), ArrayXd::Zero(4));
    CHECK(state.round == 1);
    CHECK(state.play_counts[1] == 1);
    CHECK((state.cum_est_loss == 0.0).all());
    CHECK((state.log_weights == 0.0).all());
    CHECK((state.gap_estimates == 0.0).all());
}

TEST_CASE("time-varying eta recomputes weights from cumulative losses") {
    const Schedule s = Schedule::emp();  // eta_t = beta_t varies with t
    PolicyState state(2);
    ArrayXd e1(2), e2(2);
    e1 << 1.0, 0.0;
    e2 << 0.5, 0.0;
    apply_update(state, s, Strategy({0}), e1);
    apply_update(state, s, Strategy({0}), e2);
    // closed form: -eta_{3} * Ltilde_2, not a product of per-step factors
    const double eta3 = s.eta(3, 2);
    CHECK(state.log_weights[0] == doctest::Approx(-eta3 * 1.5));
    CHECK(state.log_weights[1] == doctest::Approx(0.0));
}

TEST_CASE("gap estimates follow the empirical definition") {
    PolicyState state(3);
    state.round = 10;
    state.cum_est_loss << 10.0, 4.0, 7.0;
    update_gap_estimates(state);
    CHECK(state.gap_estimates[0] == doctest::Approx(0.6));
    CHECK(state.gap_estimates[1] == doctest::Approx(0.0));
    CHECK(state.gap_estimates[2] == doctest::Approx(0.3));

    PolicyState clamp(2);
    clamp.round = 2;
    clamp.cum_est_loss << 9.0, 4.0;
    update_gap_estimates(clamp);
    CHECK(clamp.gap_estimates[0] == 1.0);
    CHECK(clamp.gap_estimates[1] == 0.0);

    PolicyState equal(3);
    equal.round = 5;
    equal.cum_est_loss << 2.0, 2.0, 2.0;
    update_gap_estimates(equal);
    CHECK((equal.gap_estimates == 0.0).all());
    // at least one channel always sits at gap zero
    CHECK(state.gap_estimates.minCoeff() == 0.0);
}

TEST_CASE("same seed reproduces the strategy sequence") {
    const auto space = StrategySpace::make(6, 2);
    auto feedback = [](const Strategy& s) {
        ArrayXd losses(s.size());
        for (int j = 0; j < s.size(); ++j) losses[j] = (s.members[j] % 2) ? 0.75 : 0.25;
        return losses;
    };
    AufhExp3pp a(space, Schedule::emp_experimental(), AufhExp3pp::Impl::Dp, 99);
    AufhExp3pp b(space, Schedule::emp_experimental(), AufhExp3pp::Impl::Dp, 99);
    for (int t = 0; t < 200; ++t) CHECK(a.play_round(feedback) == b.play_round(feedback));
}

TEST_CASE("estimated losses accumulate only on observed channels") {
    const auto space = StrategySpace::make(6, 2);
    AufhExp3pp policy(space, Schedule::emp(), AufhExp3pp::Impl::Dp, 3);
    auto feedback = [](const Strategy& s) { return ArrayXd::Constant(s.size(), 1.0); };
    for (int t = 0; t < 50; ++t) policy.play_round(feedback);
    const auto& st = policy.state();
    for (int f = 0; f < 6; ++f) {
        if (st.play_counts[static_cast<std::size_t>(f)] == 0)
            CHECK(st.cum_est_loss[f] == 0.0);
        else
            CHECK(st.cum_est_loss[f] > 0.0);
    }
    CHECK(st.round == 50);
}

TEST_CASE("log weights stay finite after a million adversarial updates") {
    const int n = 8;
    const Schedule s = Schedule::emp();
    PolicyState state(n);
    ArrayXd est = ArrayXd::Zero(n);
    const Strategy hit({0});
    for (int t = 0; t < 1'000'000; ++t) {
        // worst-case importance weight 1/q <= 2n, always on the same channel
        est[0] = 2.0 * n;
        apply_update(state, s, hit, est);
    }
    CHECK(state.log_weights.isFinite().all());
    CHECK(state.cum_est_loss.isFinite().all());
    CHECK((state.gap_estimates >= 0.0).all());
    CHECK((state.gap_estimates <= 1.0).all());
    CHECK(state.gap_estimates.minCoeff() == 0.0);
}

TEST_CASE("reference implementation refuses non-enumerable spaces") {
    CHECK_THROWS_AS(AufhExp3pp(StrategySpace::make(60, 4), Schedule::emp(),
                               AufhExp3pp::Impl::Reference, 1, 1000),
                    SpaceTooLargeError);
    // the DP form handles the same space fine
    AufhExp3pp dp(StrategySpace::make(60, 4), Schedule::emp(), AufhExp3pp::Impl::Dp, 1, 1000);
    auto feedback = [](const Strategy& s) { return ArrayXd::Constant(s.size(), 0.5); };
    CHECK(dp.play_round(feedback).size() == 4);
}

TEST_CASE("reference and DP marginals agree through the policy surface") {
    const auto space = StrategySpace::make(7, 3);  // padded covering set
    AufhExp3pp ref(space, Schedule::emp_experimental(), AufhExp3pp::Impl::Reference, 21);
    AufhExp3pp dp(space, Schedule::emp_experimental(), AufhExp3pp::Impl::Dp, 21);
    auto feedback = [](const Strategy& s) {
        ArrayXd losses(s.size());
        for (int j = 0; j < s.size(); ++j) losses[j] = s.members[j] < 3 ? 0.2 : 0.8;
        return losses;
    };
    for (int t = 0; t < 100; ++t) {
        ref.play_round(feedback);
        dp.play_round(feedback);
    }
    // marginals are a deterministic function of the (different) states; check
    // the DP form against the enumerated form on the reference state
    const ArrayXd eps = ref.next_epsilons();
    const auto covering = ref.covering();
    const ArrayXd probs = strategy_distribution(ref.strategies(), space,
                                                ref.state().log_weights, eps, covering);
    const ArrayXd q_ref = enumerated_marginals(ref.strategies(), probs, space.n);
    const DPTables tables = build_tables(ref.state().log_weights, space.k_r);
    const ArrayXd q_dp = dp_marginals(tables, ref.state().log_weights, eps, covering);
    CHECK((q_ref - q_dp).abs().maxCoeff() < 1e-9);
}
