#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace kfree {

/// Prime factorization as (prime, exponent) pairs with primes strictly
/// increasing. The empty list represents 1.
struct Factorization {
    std::vector<std::pair<std::uint64_t, std::uint32_t>> factors;

    bool operator==(const Factorization&) const = default;

    /// Product of prime^exponent; throws std::overflow_error if it does not
    /// fit in 64 bits.
    std::uint64_t value() const;

    /// Exponent of p, 0 when p is not a factor.
    std::uint32_t exponent_of(std::uint64_t p) const;
};

/// Canonical factorization of n >= 1. Deterministic: trial division by the
/// primes below 1e6, then Miller-Rabin plus Brent's cycle method with a fixed
/// polynomial sequence for the 64-bit leftovers.
Factorization factorize(std::uint64_t n);

std::uint64_t euler_phi(const Factorization& f);

/// All divisors, ascending by value.
std::vector<Factorization> divisors(const Factorization& f);

/// Least l >= 1 with k^l = 1 (mod d). Requires gcd(k, d) = 1; d = 1 yields 1
/// (trivial group). Computed by shrinking phi(d) prime by prime, not by
/// iterating powers.
std::uint64_t multiplicative_order(std::uint64_t k, std::uint64_t d);

bool is_prime(std::uint64_t n);

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

/// a*b, throwing std::overflow_error instead of wrapping.
std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b);

}  // namespace kfree
