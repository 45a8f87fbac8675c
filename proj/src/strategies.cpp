#include "aufh/strategies.hpp"

#include <algorithm>
#include <numeric>

namespace aufh {

std::vector<Strategy> enumerate_strategies(const StrategySpace& space, std::int64_t cap) {
    if (!space.enumerable(cap)) {
        throw SpaceTooLargeError("strategy space too large to enumerate (n=" +
                                 std::to_string(space.n) + ", k_r=" + std::to_string(space.k_r) +
                                 ", cap=" + std::to_string(cap) + ")");
    }
    const int n = space.n;
    const int k = space.k_r;
    std::vector<Strategy> out;
    out.reserve(static_cast<std::size_t>(*space.num_strategies));

    std::vector<int> comb(k);
    std::iota(comb.begin(), comb.end(), 0);
    while (true) {
        Strategy s;
        s.members = comb;
        out.push_back(std::move(s));
        // next combination in lexicographic order
        int j = k - 1;
        while (j >= 0 && comb[j] == n - k + j) --j;
        if (j < 0) break;
        ++comb[j];
        for (int i = j + 1; i < k; ++i) comb[i] = comb[i - 1] + 1;
    }
    return out;
}

std::int64_t strategy_rank(const StrategySpace& space, const Strategy& s) {
    // Combinadic rank: count combinations lexicographically below s.
    const int n = space.n;
    const int k = space.k_r;
    std::int64_t rank = 0;
    int prev = -1;
    for (int j = 0; j < k; ++j) {
        for (int v = prev + 1; v < s.members[j]; ++v) {
            rank += binomial_checked(n - 1 - v, k - 1 - j).value();
        }
        prev = s.members[j];
    }
    return rank;
}

std::pair<Strategy, double> hindsight_best(const ArrayXd& loss_totals, int k_r) {
    const int n = static_cast<int>(loss_totals.size());
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    // smallest totals first, ties resolved toward the lower channel index
    std::stable_sort(idx.begin(), idx.end(),
                     [&](int a, int b) { return loss_totals[a] < loss_totals[b]; });
    std::vector<int> members(idx.begin(), idx.begin() + k_r);
    double total = 0.0;
    for (int f : members) total += loss_totals[f];
    return {Strategy(std::move(members)), total};
}

double best_subset_sum(const ArrayXd& per_channel, int k_r) {
    std::vector<double> v(per_channel.data(), per_channel.data() + per_channel.size());
    std::nth_element(v.begin(), v.begin() + (k_r - 1), v.end());
    return std::accumulate(v.begin(), v.begin() + k_r, 0.0);
}

}  // namespace aufh
