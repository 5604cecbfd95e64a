#pragma once

#include <cstdint>
#include <vector>

#include "kfree/arith.hpp"

namespace kfree {

/// One prime of the modulus with its exponent in n and in k (exp_k = 0 when
/// the prime does not divide k).
struct ModulusPrime {
    std::uint64_t p;
    std::uint32_t exp_n;
    std::uint32_t exp_k;
};

/// The pair (n, k) together with the factorization of n and the split
/// k = unit * prod p_i^{exp_k_i} over the primes shared with n, so that
/// gcd(unit, n) = 1.
struct ModulusContext {
    std::uint64_t n = 1;
    std::uint64_t k = 1;
    std::uint64_t unit = 1;
    Factorization n_fact;
    std::vector<ModulusPrime> primes;  // ascending; exp_k > 0 marks shared
    std::size_t shared_count = 0;

    /// Requires k >= 1 and n >= 1. k is stored as given; callers that want
    /// multiplication-by-k semantics on Z/nZ may reduce k mod n first.
    static ModulusContext make(std::uint64_t k, std::uint64_t n);

    /// Exponent vector of m aligned with primes; throws if m does not
    /// divide n.
    std::vector<std::uint32_t> exponents_of_divisor(std::uint64_t m) const;
};

/// k^j * m: the divisor whose stratum is reached from A_m after j
/// multiplications by k. Requires m | n and j >= 1.
std::uint64_t stratum_image(std::uint64_t m, std::uint64_t j,
                            const ModulusContext& ctx);

/// A_m = {x in Z/nZ : gcd(x, n) = m}, ascending. A_n = {0}.
std::vector<std::uint64_t> stratum_elements(std::uint64_t m,
                                            const ModulusContext& ctx);

/// x, kx, k^2 x, ... truncated right before the first repeated residue.
std::vector<std::uint64_t> orbit(std::uint64_t x, const ModulusContext& ctx);

/// Partition of A_m into cycles of x -> kx. Requires gcd(k, n/m) = 1.
/// Each cycle starts at its smallest residue; cycles are ordered by that
/// residue.
std::vector<std::vector<std::uint64_t>> root_stratum_cycles(
    std::uint64_t m, const ModulusContext& ctx);

/// True iff k*x mod n is outside the set for every member x.
/// Throws if some element is >= n.
bool is_kfree(const std::vector<std::uint64_t>& set, std::uint64_t k,
              std::uint64_t n);
bool is_kfree(const std::vector<std::uint64_t>& set, const ModulusContext& ctx);

}  // namespace kfree
