#pragma once

#include <cstdint>
#include <vector>

namespace kfree {

/// Minimum size of a position set in [1, l] meeting the boundary, spacing
/// and window conditions: ceil(l / 3).
std::uint64_t h_value(std::uint64_t l);

/// Canonical witness of h_value(l): positions 2, 5, 8, ... except when
/// l = 1 mod 3, where the run starts at 1 so it can reach the right edge.
std::vector<std::uint32_t> min_pattern(std::uint64_t l);

/// Checks the four conditions an inclusion-maximal trace must satisfy on an
/// orbit of length l: one of the first two positions, one of the last two,
/// no two adjacent, and no window of three interior positions left empty.
bool is_valid_orbit_pattern(const std::vector<std::uint32_t>& positions,
                            std::uint64_t l);

/// Number of elements of start, start*k, start*k^2, ... inside [1, n].
/// Requires k >= 2 and 1 <= start <= n.
std::uint64_t interval_orbit_length(std::uint64_t start, std::uint64_t k,
                                    std::uint64_t n);

/// Minimum size of an inclusion-maximal k-free subset of [1, n]: the pattern
/// minimum summed over the multiplicative orbits. Requires k >= 2.
/// tilde_rk splits the orbit starts across threads; tilde_rk_serial is the
/// single-pass reference.
std::uint64_t tilde_rk(std::uint64_t k, std::uint64_t n);
std::uint64_t tilde_rk_serial(std::uint64_t k, std::uint64_t n);

struct OrbitPattern {
    std::uint64_t start;
    std::uint64_t length;
    std::vector<std::uint32_t> positions;  // 1-based within the orbit
};

struct IntervalSolution {
    std::uint64_t n;
    std::uint64_t k;
    std::vector<std::uint64_t> elements;  // ascending
    std::vector<OrbitPattern> orbits;     // by ascending start
};

/// Witness of tilde_rk: the minimal pattern applied inside every orbit.
IntervalSolution construct_min_maximal(std::uint64_t k, std::uint64_t n);

/// True iff the set is k-free in [1, n] and no element of [1, n] can be
/// added without breaking that. Throws on elements outside [1, n].
bool is_maximal_kfree_interval(const std::vector<std::uint64_t>& set,
                               std::uint64_t k, std::uint64_t n);

struct AsymptoticRow {
    std::uint64_t n;
    std::uint64_t exact;        // tilde_rk(k, n)
    std::int64_t main_num;      // k^2 n / (k^2+k+1) in lowest terms
    std::int64_t main_den;
    std::int64_t err_num;       // exact - main, lowest terms
    std::int64_t err_den;
    double err_over_log2;       // error / log_k(n)^2
};

/// One row per nonzero n in the grid, exact arithmetic except for the last
/// column.
std::vector<AsymptoticRow> asymptotic_report(
    std::uint64_t k, const std::vector<std::uint64_t>& n_grid);

}  // namespace kfree
