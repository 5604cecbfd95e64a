#pragma once

#include <cstdint>
#include <optional>

#include "kfree/forest.hpp"

namespace kfree {

/// Exact maximum for gcd(n, k) = 1: half of each even cycle plus just under
/// half of each odd cycle, summed over the nontrivial divisors of n.
RkValue rk_coprime(std::uint64_t k, std::uint64_t n);

/// n = k*m with k not dividing m: the value is (k-1)*m.
RkValue rk_km(std::uint64_t k, std::uint64_t m);

/// n = k^2*m: (k^2-k)*m plus the value for m, delegated to the general
/// solver.
RkValue rk_k2m(std::uint64_t k, std::uint64_t m);

/// Strips k^2 factors off n repeatedly, then dispatches the base case to the
/// general solver. Requires k >= 2 and k^2 | n.
RkValue rk_k2m_chain(std::uint64_t k, std::uint64_t n);

/// Closed forms for the prime-power shapes: k = u*p or u*p^2 with n = p^a or
/// p^a*q^b (u coprime to the primes of n). Sums the totients along the kept
/// chain positions and adds the top stratum's cycle picks when the sweep
/// leaves the root free. Returns nullopt when (k, n) has none of the four
/// shapes.
std::optional<RkValue> rk_prime_power_shapes(std::uint64_t k, std::uint64_t n);

/// R_2(2^m - 1) for Mersenne prime moduli via the order-m cycle structure.
/// Requires 2^m - 1 prime.
RkValue mersenne_rk(std::uint32_t m);

struct SidonBound {
    std::uint32_t m;
    std::uint64_t n;        // 2^m - 1
    std::uint64_t r2;       // R_2(n)
    double log_form;        // sqrt((n-1)/2 - (n-1)/log2(n-1) + 1/4) + 1/2
    double order_form;      // sqrt(R_2(n) + 1/4) + 1/2
    std::int64_t log_form_floor;    // -1 when degenerate
    std::int64_t order_form_floor;
    bool degenerate;        // log-form radicand went negative (m = 2)
};

/// Upper bounds for a 2-fold Sidon set modulo a Mersenne prime, in both the
/// log-denominator variant and the exact-order variant.
SidonBound sidon_bound(std::uint32_t m);

/// True iff the general solver reproduces k*(k^2m - 1)/(k + 1) at n = k^{2m}.
bool density_identity_check(std::uint64_t k, std::uint32_t m);

struct DeficitScan {
    double max_ratio;      // max over the window of ((n-1)/2 - R_k(n)) / n
    std::uint64_t argmax;  // n attaining it, 0 when the window was empty
};

/// Scans n in [lo, hi] with gcd(n, k) = 1 for the largest relative gap
/// between (n-1)/2 and R_k(n). The gap equals S/2n where S sums
/// phi(d)/order(d) over the odd-order divisors, so everything stays exact
/// until the final division.
DeficitScan scan_coprime_deficit(std::uint64_t k, std::uint64_t lo,
                                 std::uint64_t hi);
DeficitScan scan_coprime_deficit_serial(std::uint64_t k, std::uint64_t lo,
                                        std::uint64_t hi);

}  // namespace kfree
