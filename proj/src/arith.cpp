#include "kfree/arith.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace kfree {

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(
        static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    if (m == 1) return 0;
    std::uint64_t r = 1;
    base %= m;
    while (exp > 0) {
        if (exp & 1) r = mul_mod(r, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return r;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r;
    if (__builtin_mul_overflow(a, b, &r))
        throw std::overflow_error("integer overflow in multiplication");
    return r;
}

std::uint64_t Factorization::value() const {
    std::uint64_t v = 1;
    for (const auto& [p, e] : factors)
        for (std::uint32_t i = 0; i < e; ++i) v = checked_mul(v, p);
    return v;
}

std::uint32_t Factorization::exponent_of(std::uint64_t p) const {
    for (const auto& [q, e] : factors)
        if (q == p) return e;
    return 0;
}

namespace {

constexpr std::uint64_t kTrialLimit = 1'000'000;

const std::vector<std::uint32_t>& small_primes() {
    static const std::vector<std::uint32_t> primes = [] {
        std::vector<bool> composite(kTrialLimit + 1, false);
        std::vector<std::uint32_t> ps;
        for (std::uint32_t i = 2; i <= kTrialLimit; ++i) {
            if (composite[i]) continue;
            ps.push_back(i);
            for (std::uint64_t j = static_cast<std::uint64_t>(i) * i;
                 j <= kTrialLimit; j += i)
                composite[j] = true;
        }
        return ps;
    }();
    return primes;
}

bool miller_rabin(std::uint64_t n, std::uint64_t a) {
    if (a % n == 0) return true;
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int i = 1; i < s; ++i) {
        x = mul_mod(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

// Deterministic Brent rho. The polynomial offset walks 1, 2, 3, ... so a
// fixed composite always splits the same way.
std::uint64_t brent_rho(std::uint64_t n) {
    if ((n & 1) == 0) return 2;
    for (std::uint64_t c = 1;; ++c) {
        std::uint64_t x = 2, y = 2, d = 1;
        std::uint64_t power = 1, lam = 1;
        std::uint64_t saved_y = y;
        while (d == 1) {
            if (power == lam) {
                x = y;
                power <<= 1;
                lam = 0;
                saved_y = y;
            }
            std::uint64_t q = 1;
            std::uint64_t i = 0;
            const std::uint64_t batch = 128;
            for (; i < batch && lam + i < power && d == 1; ++i) {
                y = (mul_mod(y, y, n) + c) % n;
                q = mul_mod(q, x > y ? x - y : y - x, n);
            }
            lam += i;
            d = std::gcd(q, n);
        }
        if (d == n) {
            // Batch overshot; replay one step at a time.
            y = saved_y;
            d = 1;
            while (d == 1) {
                y = (mul_mod(y, y, n) + c) % n;
                d = std::gcd(x > y ? x - y : y - x, n);
            }
        }
        if (d != n) return d;
    }
}

void factor_recursive(std::uint64_t n,
                      std::vector<std::pair<std::uint64_t, std::uint32_t>>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        out.emplace_back(n, 1);
        return;
    }
    std::uint64_t d = brent_rho(n);
    factor_recursive(d, out);
    factor_recursive(n / d, out);
}

}  // namespace

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0) return n == p;
    }
    for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (!miller_rabin(n, a)) return false;
    }
    return true;
}

Factorization factorize(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("factorize: n must be >= 1");
    Factorization f;
    for (std::uint32_t p : small_primes()) {
        if (static_cast<std::uint64_t>(p) * p > n) break;
        if (n % p != 0) continue;
        std::uint32_t e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        f.factors.emplace_back(p, e);
    }
    if (n > 1) {
        if (n <= kTrialLimit * kTrialLimit || is_prime(n)) {
            // No divisor below sqrt(n), or proven prime outright.
            f.factors.emplace_back(n, 1);
        } else {
            std::vector<std::pair<std::uint64_t, std::uint32_t>> rest;
            factor_recursive(n, rest);
            std::sort(rest.begin(), rest.end());
            for (std::size_t i = 0; i < rest.size();) {
                std::uint64_t p = rest[i].first;
                std::uint32_t e = 0;
                while (i < rest.size() && rest[i].first == p) {
                    e += rest[i].second;
                    ++i;
                }
                f.factors.emplace_back(p, e);
            }
        }
    }
    return f;
}

std::uint64_t euler_phi(const Factorization& f) {
    std::uint64_t phi = 1;
    for (const auto& [p, e] : f.factors) {
        for (std::uint32_t i = 1; i < e; ++i) phi = checked_mul(phi, p);
        phi = checked_mul(phi, p - 1);
    }
    return phi;
}

std::vector<Factorization> divisors(const Factorization& f) {
    std::vector<Factorization> out;
    out.push_back(Factorization{});
    for (const auto& [p, e] : f.factors) {
        std::size_t base = out.size();
        out.reserve(base * (e + 1));
        for (std::size_t i = 0; i < base; ++i) {
            Factorization cur = out[i];
            for (std::uint32_t j = 1; j <= e; ++j) {
                cur.factors.emplace_back(p, j);
                out.push_back(cur);
                cur.factors.pop_back();
            }
        }
    }
    // Primes were appended in ascending order, so each list is already
    // canonical; only the divisor values need sorting.
    std::sort(out.begin(), out.end(),
              [](const Factorization& a, const Factorization& b) {
                  return a.value() < b.value();
              });
    return out;
}

std::uint64_t multiplicative_order(std::uint64_t k, std::uint64_t d) {
    if (d == 0) throw std::invalid_argument("multiplicative_order: d must be >= 1");
    if (d == 1) return 1;
    std::uint64_t r = k % d;
    if (std::gcd(r, d) != 1)
        throw std::invalid_argument(
            "multiplicative_order: gcd(k, d) must be 1 (k=" +
            std::to_string(k) + ", d=" + std::to_string(d) + ")");
    std::uint64_t phi = euler_phi(factorize(d));
    std::uint64_t l = phi;
    for (const auto& [p, e] : factorize(phi).factors) {
        (void)e;
        while (l % p == 0 && pow_mod(r, l / p, d) == 1) l /= p;
    }
    return l;
}

}  // namespace kfree
