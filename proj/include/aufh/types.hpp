#pragma once

// Shared domain types: channels, k-subset strategies and the covering set
// that guarantees a minimum exploration probability per channel.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace aufh {

using Eigen::ArrayXd;

// binomial(n, k) while it fits int64, nullopt beyond that.
std::optional<std::int64_t> binomial_checked(int n, int k);

// A receive strategy: k_r distinct channel indices, kept sorted ascending so
// equality is structural.
struct Strategy {
    std::vector<int> members;

    Strategy() = default;
    explicit Strategy(std::vector<int> m);

    int size() const { return static_cast<int>(members.size()); }
    bool contains(int channel) const;

    bool operator==(const Strategy&) const = default;
    std::string to_string() const;
};

// The action universe: k_r-subsets of n channels.
struct StrategySpace {
    int n = 0;
    int k_r = 0;
    // binomial(n, k_r); nullopt means too large to enumerate with native ints.
    std::optional<std::int64_t> num_strategies;

    static StrategySpace make(int n, int k_r);
    bool enumerable(std::int64_t cap) const {
        return num_strategies.has_value() && *num_strategies <= cap;
    }
};

// ceil(n/k_r) strategies covering all channels. When k_r does not divide n the
// last block is padded with low-index channels, but `owner` stays a partition:
// every channel has exactly one owning block and padded duplicates own nothing.
struct CoveringSet {
    std::vector<Strategy> blocks;
    std::vector<int> owner;  // channel -> block index

    int block_count() const { return static_cast<int>(blocks.size()); }
};

CoveringSet build_covering_set(const StrategySpace& space);

}  // namespace aufh
