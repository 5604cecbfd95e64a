#include "kfree/closed_form.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "kfree/parallel.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace kfree {

RkValue rk_coprime(std::uint64_t k, std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("rk_coprime: n must be >= 1");
    if (std::gcd(k, n) != 1)
        throw std::invalid_argument("rk_coprime: requires gcd(n, k) = 1");
    std::uint64_t value = 0;        // sum of per-divisor cycle picks
    std::uint64_t odd_orbits = 0;   // orbits of odd length, counted once each
    for (const auto& d_fact : divisors(factorize(n))) {
        std::uint64_t d = d_fact.value();
        if (d == 1) continue;
        std::uint64_t l = multiplicative_order(k, d);
        std::uint64_t phi = euler_phi(d_fact);
        if (phi % l != 0)
            throw std::logic_error("rk_coprime: order does not divide phi");
        std::uint64_t orbits = phi / l;
        value += orbits * ((l - (l & 1)) / 2);
        if (l & 1) odd_orbits += orbits;
    }
    // Same value through the subtracted form; the difference n-1 - S must be
    // even for the expression to be an integer at all.
    std::uint64_t rem = n - 1 - odd_orbits;
    if (rem % 2 != 0 || rem / 2 != value)
        throw std::logic_error("rk_coprime: the two evaluation routes disagree");
    return RkValue{value, RkMethod::coprime};
}

RkValue rk_km(std::uint64_t k, std::uint64_t m) {
    if (k == 0 || m == 0)
        throw std::invalid_argument("rk_km: requires k, m >= 1");
    if (m % k == 0)
        throw std::invalid_argument("rk_km: requires k not dividing m");
    checked_mul(k, m);  // n must stay in range
    return RkValue{checked_mul(k - 1, m), RkMethod::km};
}

RkValue rk_k2m(std::uint64_t k, std::uint64_t m) {
    if (k == 0 || m == 0)
        throw std::invalid_argument("rk_k2m: requires k, m >= 1");
    std::uint64_t k2 = checked_mul(k, k);
    checked_mul(k2, m);  // n must stay in range
    std::uint64_t value = checked_mul(k2 - k, m) + rk_general(k, m).value;
    return RkValue{value, RkMethod::k2m};
}

RkValue rk_k2m_chain(std::uint64_t k, std::uint64_t n) {
    if (k < 2) throw std::invalid_argument("rk_k2m_chain: requires k >= 2");
    std::uint64_t k2 = checked_mul(k, k);
    if (n % k2 != 0)
        throw std::invalid_argument("rk_k2m_chain: requires k^2 | n");
    std::uint64_t total = 0;
    while (n % k2 == 0) {
        n /= k2;
        total += checked_mul(k2 - k, n);
    }
    total += rk_general(k, n).value;
    return RkValue{total, RkMethod::k2m};
}

namespace {

std::uint64_t phi_prime_power(std::uint64_t p, std::uint32_t e) {
    if (e == 0) return 1;
    std::uint64_t r = p - 1;
    for (std::uint32_t i = 1; i < e; ++i) r = checked_mul(r, p);
    return r;
}

std::uint64_t pow_u64(std::uint64_t p, std::uint32_t e) {
    std::uint64_t r = 1;
    for (std::uint32_t i = 0; i < e; ++i) r = checked_mul(r, p);
    return r;
}

// Cycle picks available at the top stratum over the leftover modulus d.
std::uint64_t top_stratum_picks(std::uint64_t k, std::uint64_t d) {
    if (d == 1) return 0;
    std::uint64_t l = multiplicative_order(k, d);
    std::uint64_t phi = euler_phi(factorize(d));
    return (phi / l) * ((l - (l & 1)) / 2);
}

}  // namespace

std::optional<RkValue> rk_prime_power_shapes(std::uint64_t k, std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("rk_prime_power_shapes: n >= 1");
    if (k == 0) return std::nullopt;
    Factorization nf = factorize(n);
    if (nf.factors.empty() || nf.factors.size() > 2) return std::nullopt;

    // Exactly one prime of n may divide k, with multiplicity 1 or 2.
    std::uint64_t p = 0;
    std::uint32_t alpha = 0, v = 0;
    std::uint64_t q = 0;
    std::uint32_t beta = 0;
    for (const auto& [prime, e] : nf.factors) {
        if (k % prime == 0) {
            if (p != 0) return std::nullopt;  // two shared primes
            p = prime;
            alpha = e;
            std::uint64_t kk = k;
            while (kk % prime == 0) {
                kk /= prime;
                ++v;
            }
        } else {
            if (q != 0) return std::nullopt;
            q = prime;
            beta = e;
        }
    }
    if (p == 0 || (v != 1 && v != 2)) return std::nullopt;

    const std::uint32_t stride = (v == 1) ? 2 : 4;
    std::uint64_t total = 0;
    for (std::uint32_t j = 0; j <= beta; ++j) {
        std::uint64_t q_part = (q == 0) ? 1 : pow_u64(q, beta - j);
        std::uint64_t q_phi = (q == 0) ? 1 : phi_prime_power(q, beta - j);
        // Kept chain positions: exponents 0, stride, 2*stride, ... below
        // alpha, plus (for the two-chain shape) 1, 1+stride, ...
        for (std::uint32_t i = 0; i < alpha; i += stride)
            total += checked_mul(phi_prime_power(p, alpha - i), q_phi);
        if (v == 2)
            for (std::uint32_t i = 1; i < alpha; i += stride)
                total += checked_mul(phi_prime_power(p, alpha - i), q_phi);
        // The sweep reaches the root with no kept child exactly when alpha
        // is a multiple of the stride; the root then contributes its own
        // cycle picks over the q-part.
        if (alpha % stride == 0 && q_part > 1)
            total += top_stratum_picks(k, q_part);
    }
    return RkValue{total, RkMethod::thm5};
}

RkValue mersenne_rk(std::uint32_t m) {
    if (m < 2 || m > 63)
        throw std::invalid_argument("mersenne_rk: requires 2 <= m <= 63");
    std::uint64_t n = (std::uint64_t(1) << m) - 1;
    if (!is_prime(n))
        throw std::invalid_argument("mersenne_rk: 2^" + std::to_string(m) +
                                    " - 1 is not prime");
    // The order of 2 is exactly m here; odd-length cycles lose one pick each.
    std::uint64_t value;
    if (m % 2 == 0) {
        value = (n - 1) / 2;  // only m = 2: even order, nothing lost
    } else {
        if ((n - 1) % (2 * std::uint64_t(m)) != 0)
            throw std::logic_error("mersenne_rk: non-integral correction");
        value = (n - 1) / 2 - (n - 1) / (2 * std::uint64_t(m));
    }
    return RkValue{value, RkMethod::coprime};
}

SidonBound sidon_bound(std::uint32_t m) {
    RkValue r2 = mersenne_rk(m);  // validates primality
    SidonBound b;
    b.m = m;
    b.n = (std::uint64_t(1) << m) - 1;
    b.r2 = r2.value;
    double nm1 = static_cast<double>(b.n - 1);
    double radicand = nm1 / 2.0 - nm1 / std::log2(nm1) + 0.25;
    b.degenerate = radicand < 0.0;
    b.log_form = b.degenerate ? std::nan("") : std::sqrt(radicand) + 0.5;
    b.order_form = std::sqrt(static_cast<double>(b.r2) + 0.25) + 0.5;
    b.log_form_floor =
        b.degenerate ? -1 : static_cast<std::int64_t>(std::floor(b.log_form));
    b.order_form_floor = static_cast<std::int64_t>(std::floor(b.order_form));
    return b;
}

bool density_identity_check(std::uint64_t k, std::uint32_t m) {
    if (k < 2)
        throw std::invalid_argument("density_identity_check: requires k >= 2");
    if (m == 0)
        throw std::invalid_argument("density_identity_check: requires m >= 1");
    std::uint64_t n = 1;
    for (std::uint32_t i = 0; i < 2 * m; ++i) n = checked_mul(n, k);
    std::uint64_t lhs = rk_general(k, n).value;
    if ((n - 1) % (k + 1) != 0) return false;
    std::uint64_t rhs = checked_mul(k, (n - 1) / (k + 1));
    return lhs == rhs;
}

namespace {

// S(n) = sum over divisors d > 1 with odd order of phi(d)/order(d); the gap
// (n-1)/2 - R_k(n) equals S(n)/2 exactly.
std::uint64_t odd_orbit_sum(std::uint64_t k, std::uint64_t n,
                            const std::vector<std::uint32_t>& spf,
                            std::vector<std::uint64_t>& order_memo) {
    // Divisors from the smallest-prime-factor table.
    std::uint64_t rest = n;
    std::vector<std::pair<std::uint64_t, std::uint32_t>> fact;
    while (rest > 1) {
        std::uint64_t p = spf[rest];
        std::uint32_t e = 0;
        while (rest % p == 0) {
            rest /= p;
            ++e;
        }
        fact.emplace_back(p, e);
    }
    std::vector<std::uint64_t> divs{1};
    for (const auto& [p, e] : fact) {
        std::size_t base = divs.size();
        std::uint64_t pe = 1;
        for (std::uint32_t t = 1; t <= e; ++t) {
            pe *= p;
            for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pe);
        }
    }
    std::uint64_t sum = 0;
    for (std::uint64_t d : divs) {
        if (d == 1) continue;
        std::uint64_t l = order_memo[d];
        if (l == 0) {
            l = multiplicative_order(k, d);
            order_memo[d] = l;
        }
        if (l & 1) {
            // phi(d) recomputed from the table; cheap next to the order.
            std::uint64_t phi = 1, r = d;
            while (r > 1) {
                std::uint64_t p = spf[r];
                std::uint64_t pe = 1;
                while (r % p == 0) {
                    r /= p;
                    pe *= p;
                }
                phi *= pe - pe / p;
            }
            sum += phi / l;
        }
    }
    return sum;
}

DeficitScan scan_impl(std::uint64_t k, std::uint64_t lo, std::uint64_t hi,
                      bool parallel) {
    if (k == 0) throw std::invalid_argument("deficit scan: requires k >= 1");
    if (hi > 20'000'000)
        throw std::invalid_argument("deficit scan: range too large");
    DeficitScan best{0.0, 0};
    if (lo < 1) lo = 1;
    if (lo > hi) return best;

    std::vector<std::uint32_t> spf(hi + 1, 0);
    for (std::uint64_t i = 2; i <= hi; ++i) {
        if (spf[i] != 0) continue;
        for (std::uint64_t j = i; j <= hi; j += i)
            if (spf[j] == 0) spf[j] = static_cast<std::uint32_t>(i);
    }
    // Orders dominate the cost; every d gets its own slot, so the fill is
    // safely data-parallel.
    std::vector<std::uint64_t> order_memo(hi + 1, 0);
    if (parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 512) \
    num_threads(kfree::max_threads())
        for (long long d = 2; d <= static_cast<long long>(hi); ++d)
            if (std::gcd(k, static_cast<std::uint64_t>(d)) == 1)
                order_memo[d] =
                    multiplicative_order(k, static_cast<std::uint64_t>(d));
#else
        for (std::uint64_t d = 2; d <= hi; ++d)
            if (std::gcd(k, d) == 1) order_memo[d] = multiplicative_order(k, d);
#endif
    } else {
        for (std::uint64_t d = 2; d <= hi; ++d)
            if (std::gcd(k, d) == 1) order_memo[d] = multiplicative_order(k, d);
    }

    std::vector<std::uint64_t> sums(hi - lo + 1, 0);
    for (std::uint64_t n = lo; n <= hi; ++n)
        if (std::gcd(k, n) == 1) sums[n - lo] = odd_orbit_sum(k, n, spf, order_memo);

    for (std::uint64_t n = lo; n <= hi; ++n) {
        if (std::gcd(k, n) != 1) continue;
        double ratio =
            static_cast<double>(sums[n - lo]) / (2.0 * static_cast<double>(n));
        if (ratio > best.max_ratio) {
            best.max_ratio = ratio;
            best.argmax = n;
        }
    }
    return best;
}

}  // namespace

DeficitScan scan_coprime_deficit(std::uint64_t k, std::uint64_t lo,
                                 std::uint64_t hi) {
    return scan_impl(k, lo, hi, true);
}

DeficitScan scan_coprime_deficit_serial(std::uint64_t k, std::uint64_t lo,
                                        std::uint64_t hi) {
    return scan_impl(k, lo, hi, false);
}

}  // namespace kfree
