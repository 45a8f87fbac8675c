#include "aufh/types.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace aufh {

std::optional<std::int64_t> binomial_checked(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    std::int64_t result = 1;
    for (int j = 1; j <= k; ++j) {
        // result * (n - k + j) / j is always integral at this point; guard the
        // multiply against int64 overflow before performing it.
        std::int64_t num = n - k + j;
        if (result > std::numeric_limits<std::int64_t>::max() / num) return std::nullopt;
        result = result * num / j;
    }
    return result;
}

Strategy::Strategy(std::vector<int> m) : members(std::move(m)) {
    std::sort(members.begin(), members.end());
    for (std::size_t j = 1; j < members.size(); ++j) {
        if (members[j] == members[j - 1])
            throw std::invalid_argument("strategy has duplicate channel " +
                                        std::to_string(members[j]));
    }
}

bool Strategy::contains(int channel) const {
    return std::binary_search(members.begin(), members.end(), channel);
}

std::string Strategy::to_string() const {
    std::ostringstream os;
    os << '{';
    for (std::size_t j = 0; j < members.size(); ++j) {
        if (j) os << ',';
        os << members[j];
    }
    os << '}';
    return os.str();
}

StrategySpace StrategySpace::make(int n, int k_r) {
    if (n < 2) throw std::invalid_argument("channel count must be >= 2");
    if (k_r < 1 || k_r > n) throw std::invalid_argument("k_r must satisfy 1 <= k_r <= n");
    StrategySpace s;
    s.n = n;
    s.k_r = k_r;
    s.num_strategies = binomial_checked(n, k_r);
    return s;
}

CoveringSet build_covering_set(const StrategySpace& space) {
    const int n = space.n;
    const int k = space.k_r;
    const int num_blocks = (n + k - 1) / k;

    CoveringSet cover;
    cover.owner.resize(n);
    cover.blocks.reserve(num_blocks);
    for (int b = 0; b < num_blocks; ++b) {
        std::vector<int> members;
        members.reserve(k);
        for (int f = b * k; f < std::min((b + 1) * k, n); ++f) {
            members.push_back(f);
            cover.owner[f] = b;
        }
        // Pad a short final block with the lowest-index channels it lacks;
        // those duplicates are members but never owners.
        for (int f = 0; static_cast<int>(members.size()) < k; ++f) {
            if (std::find(members.begin(), members.end(), f) == members.end())
                members.push_back(f);
        }
        cover.blocks.emplace_back(std::move(members));
    }
    return cover;
}

}  // namespace aufh
