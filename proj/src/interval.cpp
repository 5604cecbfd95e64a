#include "kfree/interval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

#include "kfree/arith.hpp"
#include "kfree/parallel.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace kfree {

std::uint64_t h_value(std::uint64_t l) {
    if (l == 0) throw std::invalid_argument("h_value: requires l >= 1");
    return (l + 2) / 3;
}

std::vector<std::uint32_t> min_pattern(std::uint64_t l) {
    std::uint64_t count = h_value(l);
    std::uint32_t start = (l % 3 == 1) ? 1 : 2;
    std::vector<std::uint32_t> out;
    out.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i)
        out.push_back(start + static_cast<std::uint32_t>(3 * i));
    return out;
}

bool is_valid_orbit_pattern(const std::vector<std::uint32_t>& positions,
                            std::uint64_t l) {
    if (l == 0) throw std::invalid_argument("pattern check: requires l >= 1");
    std::vector<bool> in(l + 2, false);
    for (std::uint32_t p : positions) {
        if (p < 1 || p > l) return false;
        in[p] = true;
    }
    if (!in[1] && !(l >= 2 && in[2])) return false;
    if (!in[l] && !(l >= 2 && in[l - 1])) return false;
    for (std::uint64_t i = 1; i < l; ++i)
        if (in[i] && in[i + 1]) return false;
    for (std::uint64_t i = 2; i + 1 <= l; ++i)
        if (!in[i - 1] && !in[i] && !in[i + 1]) return false;
    return true;
}

std::uint64_t interval_orbit_length(std::uint64_t start, std::uint64_t k,
                                    std::uint64_t n) {
    if (k < 2)
        throw std::invalid_argument("interval_orbit_length: requires k >= 2");
    if (start == 0 || start > n)
        throw std::invalid_argument("interval_orbit_length: start outside [1, n]");
    std::uint64_t len = 1;
    std::uint64_t cur = start;
    while (cur <= n / k) {
        cur *= k;
        ++len;
    }
    return len;
}

namespace {

std::uint64_t tilde_chunk(std::uint64_t k, std::uint64_t n, std::uint64_t lo,
                          std::uint64_t hi) {
    std::uint64_t total = 0;
    for (std::uint64_t i = lo; i <= hi; ++i) {
        if (i % k == 0) continue;
        std::uint64_t len = 1;
        std::uint64_t cur = i;
        while (cur <= n / k) {
            cur *= k;
            ++len;
        }
        total += (len + 2) / 3;
    }
    return total;
}

}  // namespace

std::uint64_t tilde_rk_serial(std::uint64_t k, std::uint64_t n) {
    if (k < 2)
        throw std::invalid_argument(
            "tilde_rk: requires k >= 2 (the problem degenerates below that)");
    if (n == 0) return 0;
    return tilde_chunk(k, n, 1, n);
}

std::uint64_t tilde_rk(std::uint64_t k, std::uint64_t n) {
    if (k < 2)
        throw std::invalid_argument(
            "tilde_rk: requires k >= 2 (the problem degenerates below that)");
    if (n == 0) return 0;
#ifdef _OPENMP
    int threads = max_threads();
    if (threads > 1 && n >= 1u << 16) {
        std::uint64_t total = 0;
#pragma omp parallel for reduction(+ : total) schedule(static) \
    num_threads(threads)
        for (long long i = 1; i <= static_cast<long long>(n); ++i) {
            std::uint64_t ii = static_cast<std::uint64_t>(i);
            if (ii % k == 0) continue;
            std::uint64_t len = 1;
            std::uint64_t cur = ii;
            while (cur <= n / k) {
                cur *= k;
                ++len;
            }
            total += (len + 2) / 3;
        }
        return total;
    }
#endif
    return tilde_chunk(k, n, 1, n);
}

IntervalSolution construct_min_maximal(std::uint64_t k, std::uint64_t n) {
    if (k < 2)
        throw std::invalid_argument("construct_min_maximal: requires k >= 2");
    IntervalSolution sol;
    sol.n = n;
    sol.k = k;
    for (std::uint64_t i = 1; i <= n; ++i) {
        if (i % k == 0) continue;
        OrbitPattern orb;
        orb.start = i;
        orb.length = interval_orbit_length(i, k, n);
        orb.positions = min_pattern(orb.length);
        std::uint64_t cur = i;
        std::size_t pi = 0;
        for (std::uint64_t pos = 1; pos <= orb.length; ++pos) {
            if (pi < orb.positions.size() && orb.positions[pi] == pos) {
                sol.elements.push_back(cur);
                ++pi;
            }
            if (pos < orb.length) cur *= k;  // stays <= n by construction
        }
        sol.orbits.push_back(std::move(orb));
    }
    std::sort(sol.elements.begin(), sol.elements.end());
    return sol;
}

bool is_maximal_kfree_interval(const std::vector<std::uint64_t>& set,
                               std::uint64_t k, std::uint64_t n) {
    if (k == 0)
        throw std::invalid_argument("is_maximal_kfree_interval: requires k >= 1");
    const bool small = n <= (std::uint64_t(1) << 27);
    std::vector<bool> bitmap;
    std::unordered_set<std::uint64_t> hashed;
    if (small) {
        bitmap.assign(n + 1, false);
    } else {
        hashed.reserve(set.size() * 2);
    }
    for (std::uint64_t x : set) {
        if (x < 1 || x > n)
            throw std::invalid_argument(
                "is_maximal_kfree_interval: element outside [1, n]");
        if (small)
            bitmap[x] = true;
        else
            hashed.insert(x);
    }
    auto contains = [&](std::uint64_t v) {
        return small ? static_cast<bool>(bitmap[v]) : hashed.count(v) > 0;
    };
    for (std::uint64_t x : set) {
        if (x > n / k) continue;  // k*x escapes the interval
        std::uint64_t kx = x * k;
        if (contains(kx)) return false;
    }
    for (std::uint64_t z = 1; z <= n; ++z) {
        if (contains(z)) continue;
        bool blocked_up = z <= n / k && (contains(z * k) || z * k == z);
        bool blocked_down = z % k == 0 && (contains(z / k) || z / k == z);
        if (!blocked_up && !blocked_down) return false;  // z could be added
    }
    return true;
}

std::vector<AsymptoticRow> asymptotic_report(
    std::uint64_t k, const std::vector<std::uint64_t>& n_grid) {
    if (k < 2)
        throw std::invalid_argument("asymptotic_report: requires k >= 2");
    if (k > (std::uint64_t(1) << 31))
        throw std::overflow_error("asymptotic_report: k out of range");
    std::vector<AsymptoticRow> rows;
    const std::int64_t den0 =
        static_cast<std::int64_t>(k * k + k + 1);
    for (std::uint64_t n : n_grid) {
        if (n == 0) continue;
        AsymptoticRow row;
        row.n = n;
        row.exact = tilde_rk(k, n);
        __int128 num0 = static_cast<__int128>(k) * k * n;
        // gcd(num0, den0) = gcd(num0 mod den0, den0); den0 is tiny.
        std::int64_t g = static_cast<std::int64_t>(
            std::gcd(static_cast<std::uint64_t>(num0 % den0),
                     static_cast<std::uint64_t>(den0)));
        __int128 main_num_128 = num0 / g;
        row.main_den = den0 / g;
        if (main_num_128 > std::numeric_limits<std::int64_t>::max())
            throw std::overflow_error("asymptotic_report: n out of range");
        row.main_num = static_cast<std::int64_t>(main_num_128);
        __int128 err_num_128 =
            static_cast<__int128>(row.exact) * den0 - num0;
        std::uint64_t abs_err = static_cast<std::uint64_t>(
            err_num_128 < 0 ? -err_num_128 : err_num_128);
        std::int64_t ge = static_cast<std::int64_t>(
            std::gcd(abs_err, static_cast<std::uint64_t>(den0)));
        row.err_num = static_cast<std::int64_t>(err_num_128 / ge);
        row.err_den = den0 / ge;
        double logk = std::log(static_cast<double>(n)) /
                      std::log(static_cast<double>(k));
        double err = static_cast<double>(err_num_128) / den0;
        row.err_over_log2 = n == 1 ? err : err / (logk * logk);
        rows.push_back(row);
    }
    return rows;
}

}  // namespace kfree
