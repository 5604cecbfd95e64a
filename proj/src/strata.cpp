#include "kfree/strata.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_set>

namespace kfree {

ModulusContext ModulusContext::make(std::uint64_t k, std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("ModulusContext: n must be >= 1");
    if (k == 0) throw std::invalid_argument("ModulusContext: k must be >= 1");
    ModulusContext ctx;
    ctx.n = n;
    ctx.k = k;
    ctx.n_fact = factorize(n);
    std::uint64_t unit = k;
    std::size_t shared = 0;
    for (const auto& [p, e] : ctx.n_fact.factors) {
        std::uint32_t ek = 0;
        while (unit % p == 0) {
            unit /= p;
            ++ek;
        }
        if (ek > 0) ++shared;
        ctx.primes.push_back(ModulusPrime{p, e, ek});
    }
    ctx.unit = unit;
    ctx.shared_count = shared;
    return ctx;
}

std::vector<std::uint32_t> ModulusContext::exponents_of_divisor(
    std::uint64_t m) const {
    if (m == 0) throw std::invalid_argument("not a divisor: 0");
    std::vector<std::uint32_t> exps(primes.size(), 0);
    std::uint64_t rest = m;
    for (std::size_t i = 0; i < primes.size(); ++i) {
        while (rest % primes[i].p == 0) {
            rest /= primes[i].p;
            ++exps[i];
        }
        if (exps[i] > primes[i].exp_n)
            throw std::invalid_argument(std::to_string(m) +
                                        " does not divide " +
                                        std::to_string(n));
    }
    if (rest != 1)
        throw std::invalid_argument(std::to_string(m) + " does not divide " +
                                    std::to_string(n));
    return exps;
}

std::uint64_t stratum_image(std::uint64_t m, std::uint64_t j,
                            const ModulusContext& ctx) {
    if (j == 0) throw std::invalid_argument("stratum_image: j must be >= 1");
    auto exps = ctx.exponents_of_divisor(m);
    std::uint64_t out = m;
    for (std::size_t i = 0; i < ctx.primes.size(); ++i) {
        const auto& pr = ctx.primes[i];
        if (pr.exp_k == 0) continue;
        std::uint64_t room = pr.exp_n - exps[i];
        // Exponents are < 64, so clamp j before multiplying.
        std::uint64_t step = std::min<std::uint64_t>(j, 64) * pr.exp_k;
        std::uint64_t add = std::min<std::uint64_t>(step, room);
        for (std::uint64_t t = 0; t < add; ++t) out *= pr.p;
    }
    return out;
}

std::vector<std::uint64_t> stratum_elements(std::uint64_t m,
                                            const ModulusContext& ctx) {
    auto exps = ctx.exponents_of_divisor(m);
    std::uint64_t d = ctx.n / m;
    if (d == 1) return {0};
    // Strike multiples of each prime of d instead of running gcd per
    // candidate.
    std::vector<std::uint8_t> coprime(d, 1);
    for (std::size_t i = 0; i < ctx.primes.size(); ++i) {
        if (exps[i] == ctx.primes[i].exp_n) continue;  // p does not divide d
        for (std::uint64_t v = ctx.primes[i].p; v < d; v += ctx.primes[i].p)
            coprime[v] = 0;
    }
    std::vector<std::uint64_t> out;
    for (std::uint64_t v = 1; v < d; ++v)
        if (coprime[v]) out.push_back(m * v);
    return out;
}

std::vector<std::uint64_t> orbit(std::uint64_t x, const ModulusContext& ctx) {
    if (x >= ctx.n)
        throw std::invalid_argument("orbit: residue out of range");
    std::vector<std::uint64_t> seq;
    std::unordered_set<std::uint64_t> seen;
    std::uint64_t kr = ctx.k % ctx.n;
    std::uint64_t cur = x;
    while (seen.insert(cur).second) {
        seq.push_back(cur);
        cur = mul_mod(cur, kr, ctx.n);
    }
    return seq;
}

std::vector<std::vector<std::uint64_t>> root_stratum_cycles(
    std::uint64_t m, const ModulusContext& ctx) {
    std::uint64_t d = ctx.n / m;  // validated by stratum_elements below
    auto elems = stratum_elements(m, ctx);
    if (std::gcd(ctx.k, d) != 1)
        throw std::invalid_argument(
            "root_stratum_cycles: stratum is not a root (gcd(k, n/m) != 1)");
    std::uint64_t kr = ctx.k % ctx.n;
    std::unordered_set<std::uint64_t> visited;
    visited.reserve(elems.size() * 2);
    std::vector<std::vector<std::uint64_t>> cycles;
    for (std::uint64_t e : elems) {
        if (visited.count(e)) continue;
        std::vector<std::uint64_t> cyc;
        std::uint64_t cur = e;
        do {
            cyc.push_back(cur);
            visited.insert(cur);
            cur = mul_mod(cur, kr, ctx.n);
        } while (cur != e);
        cycles.push_back(std::move(cyc));
    }
    return cycles;
}

bool is_kfree(const std::vector<std::uint64_t>& set, std::uint64_t k,
              std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("is_kfree: n must be >= 1");
    std::uint64_t kr = k % n;
    // Bitmap membership for moduli that fit comfortably in memory, hashing
    // otherwise.
    if (n <= (std::uint64_t(1) << 27)) {
        std::vector<bool> member(n, false);
        for (std::uint64_t x : set) {
            if (x >= n)
                throw std::invalid_argument("is_kfree: element out of range");
            member[x] = true;
        }
        for (std::uint64_t x : set)
            if (member[mul_mod(x, kr, n)]) return false;
        return true;
    }
    std::unordered_set<std::uint64_t> member;
    member.reserve(set.size() * 2);
    for (std::uint64_t x : set) {
        if (x >= n)
            throw std::invalid_argument("is_kfree: element out of range");
        member.insert(x);
    }
    for (std::uint64_t x : set)
        if (member.count(mul_mod(x, kr, n))) return false;
    return true;
}

bool is_kfree(const std::vector<std::uint64_t>& set,
              const ModulusContext& ctx) {
    return is_kfree(set, ctx.k, ctx.n);
}

}  // namespace kfree
