#pragma once

#include <cstdint>

#include "kfree/forest.hpp"

namespace kfree {

/// Reference answers computed without the closed forms or the greedy
/// selection. These deliberately reimplement the successor map on their own.

/// Full subset enumeration over Z/nZ. Requires n <= 20.
std::uint64_t oracle_rk_exhaustive(std::uint64_t k, std::uint64_t n);

/// Maximum independent set on the conflict graph {x, kx} (self-maps excluded
/// outright): tree DP into each cycle, then the fixed-endpoint double pass
/// around the cycle. Requires n <= 1e6.
std::uint64_t oracle_rk_pseudoforest(std::uint64_t k, std::uint64_t n);

/// Minimum size over all inclusion-maximal k-free subsets of [1, n] by full
/// enumeration. Requires n <= 18 and k >= 2.
std::uint64_t oracle_tilde_exhaustive(std::uint64_t k, std::uint64_t n);

struct PseudoforestCensus {
    std::uint64_t cycles;        // directed cycles, fixed points included
    std::uint64_t fixed_points;  // x with kx = x
};
PseudoforestCensus pseudoforest_census(std::uint64_t k, std::uint64_t n);

struct ExhaustiveSelection {
    Selection best;
    bool unique;
};

/// Best selection satisfying the no-parent-edge / nonzero-valuation
/// condition, by enumerating all subsets. Requires <= 16 nodes.
ExhaustiveSelection oracle_selection_exhaustive(const Forest& forest);

}  // namespace kfree
