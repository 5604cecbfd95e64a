#include "kfree/oracle.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <limits>
#include <stdexcept>
#include <vector>

#include "kfree/arith.hpp"

namespace kfree {

std::uint64_t oracle_rk_exhaustive(std::uint64_t k, std::uint64_t n) {
    if (n == 0 || n > 20)
        throw std::invalid_argument("oracle_rk_exhaustive: requires 1 <= n <= 20");
    std::uint32_t image_bit[20];
    for (std::uint64_t x = 0; x < n; ++x)
        image_bit[x] = 1u << mul_mod(x, k % n, n);
    std::uint64_t best = 0;
    const std::uint32_t all = (n == 32) ? ~0u : ((1u << n) - 1);
    for (std::uint32_t mask = 0; mask <= all; ++mask) {
        std::uint32_t images = 0;
        for (std::uint64_t x = 0; x < n; ++x)
            if (mask & (1u << x)) images |= image_bit[x];
        if ((images & mask) == 0)
            best = std::max<std::uint64_t>(best, __builtin_popcount(mask));
        if (mask == all) break;
    }
    return best;
}

namespace {

constexpr std::int64_t kNeg = std::numeric_limits<std::int64_t>::min() / 4;

struct PseudoforestDP {
    std::vector<std::uint32_t> succ;
    std::vector<std::int64_t> take, skip;
    std::vector<bool> on_cycle;
    std::uint64_t n;

    explicit PseudoforestDP(std::uint64_t k, std::uint64_t n_) : n(n_) {
        succ.resize(n);
        std::uint64_t kr = k % n;
        for (std::uint64_t x = 0; x < n; ++x)
            succ[x] = static_cast<std::uint32_t>(mul_mod(x, kr, n));
        take.assign(n, 1);
        skip.assign(n, 0);
        on_cycle.assign(n, true);
        for (std::uint64_t x = 0; x < n; ++x)
            if (succ[x] == x) take[x] = kNeg;  // self-map: never selectable

        // Peel the in-trees; whatever survives lies on a cycle. Each peeled
        // node folds its DP pair into its successor.
        std::vector<std::uint32_t> indeg(n, 0);
        for (std::uint64_t x = 0; x < n; ++x) ++indeg[succ[x]];
        std::deque<std::uint32_t> queue;
        for (std::uint64_t x = 0; x < n; ++x)
            if (indeg[x] == 0) queue.push_back(static_cast<std::uint32_t>(x));
        while (!queue.empty()) {
            std::uint32_t x = queue.front();
            queue.pop_front();
            on_cycle[x] = false;
            std::uint32_t p = succ[x];
            if (take[p] > kNeg / 2) take[p] += skip[x];
            skip[p] += std::max(take[x], skip[x]);
            if (--indeg[p] == 0) queue.push_back(p);
        }
    }
};

}  // namespace

std::uint64_t oracle_rk_pseudoforest(std::uint64_t k, std::uint64_t n) {
    if (n == 0 || n > 1'000'000)
        throw std::invalid_argument(
            "oracle_rk_pseudoforest: requires 1 <= n <= 1e6");
    PseudoforestDP dp(k, n);
    std::vector<bool> seen(n, false);
    std::int64_t total = 0;
    for (std::uint64_t s = 0; s < n; ++s) {
        if (!dp.on_cycle[s] || seen[s]) continue;
        std::vector<std::uint32_t> cyc;
        std::uint32_t v = static_cast<std::uint32_t>(s);
        while (!seen[v]) {
            seen[v] = true;
            cyc.push_back(v);
            v = dp.succ[v];
        }
        if (cyc.size() == 1) {
            // Fixed point: the node itself is barred, its in-trees are not.
            total += dp.skip[cyc[0]];
            continue;
        }
        // Two passes around the cycle: first node skipped, first node taken.
        std::int64_t t = kNeg, sk = dp.skip[cyc[0]];
        for (std::size_t i = 1; i < cyc.size(); ++i) {
            std::int64_t nt = sk + dp.take[cyc[i]];
            std::int64_t ns = std::max(t, sk) + dp.skip[cyc[i]];
            t = nt;
            sk = ns;
        }
        std::int64_t best = std::max(t, sk);
        t = dp.take[cyc[0]];
        sk = kNeg;
        for (std::size_t i = 1; i < cyc.size(); ++i) {
            std::int64_t nt = sk + dp.take[cyc[i]];
            std::int64_t ns = std::max(t, sk) + dp.skip[cyc[i]];
            t = nt;
            sk = ns;
        }
        best = std::max(best, sk);  // last node must stay out when first is in
        total += best;
    }
    return static_cast<std::uint64_t>(total);
}

PseudoforestCensus pseudoforest_census(std::uint64_t k, std::uint64_t n) {
    if (n == 0 || n > 1'000'000)
        throw std::invalid_argument("pseudoforest_census: requires 1 <= n <= 1e6");
    PseudoforestDP dp(k, n);
    PseudoforestCensus census{0, 0};
    std::vector<bool> seen(n, false);
    for (std::uint64_t s = 0; s < n; ++s) {
        if (!dp.on_cycle[s] || seen[s]) continue;
        ++census.cycles;
        std::uint32_t v = static_cast<std::uint32_t>(s);
        std::size_t len = 0;
        while (!seen[v]) {
            seen[v] = true;
            ++len;
            v = dp.succ[v];
        }
        if (len == 1) ++census.fixed_points;
    }
    return census;
}

std::uint64_t oracle_tilde_exhaustive(std::uint64_t k, std::uint64_t n) {
    if (k < 2)
        throw std::invalid_argument("oracle_tilde_exhaustive: requires k >= 2");
    if (n == 0 || n > 18)
        throw std::invalid_argument(
            "oracle_tilde_exhaustive: requires 1 <= n <= 18");
    // Bit i-1 represents the integer i.
    const std::uint32_t all = (1u << n) - 1;
    auto in = [](std::uint32_t mask, std::uint64_t v) {
        return (mask >> (v - 1)) & 1u;
    };
    std::uint64_t best = n + 1;
    for (std::uint32_t mask = 0; mask <= all; ++mask) {
        bool kfree = true;
        for (std::uint64_t x = 1; x <= n && kfree; ++x)
            if (in(mask, x) && k * x <= n && in(mask, k * x)) kfree = false;
        if (!kfree) {
            if (mask == all) break;
            continue;
        }
        bool maximal = true;
        for (std::uint64_t z = 1; z <= n && maximal; ++z) {
            if (in(mask, z)) continue;
            bool blocked = (k * z <= n && in(mask, k * z)) ||
                           (z % k == 0 && in(mask, z / k));
            if (!blocked) maximal = false;
        }
        if (maximal)
            best = std::min<std::uint64_t>(best, __builtin_popcount(mask));
        if (mask == all) break;
    }
    return best;
}

ExhaustiveSelection oracle_selection_exhaustive(const Forest& forest) {
    const std::size_t count = forest.nodes.size();
    if (count > 16)
        throw std::invalid_argument(
            "oracle_selection_exhaustive: requires <= 16 nodes");
    std::vector<std::uint64_t> ms;
    std::vector<std::uint64_t> alphas;
    std::vector<int> parent_idx(count, -1);
    ms.reserve(count);
    for (const auto& [m, node] : forest.nodes) {
        ms.push_back(m);
        alphas.push_back(node.alpha);
    }
    std::size_t idx = 0;
    for (const auto& [m, node] : forest.nodes) {
        if (node.parent) {
            auto it = std::lower_bound(ms.begin(), ms.end(), *node.parent);
            parent_idx[idx] = static_cast<int>(it - ms.begin());
        }
        ++idx;
    }

    std::uint32_t zero_mask = 0;
    for (std::size_t i = 0; i < count; ++i)
        if (alphas[i] == 0) zero_mask |= 1u << i;

    std::uint64_t best_total = 0;
    std::uint32_t best_mask = 0;
    std::size_t best_count = 1;  // the empty selection scores 0
    const std::uint32_t all = count == 0 ? 0 : (1u << count) - 1;
    for (std::uint32_t mask = 1; mask <= all && all != 0; ++mask) {
        if (mask & zero_mask) continue;
        bool ok = true;
        std::uint64_t total = 0;
        for (std::size_t i = 0; i < count && ok; ++i) {
            if (!(mask & (1u << i))) continue;
            if (parent_idx[i] >= 0 && (mask & (1u << parent_idx[i]))) ok = false;
            total += alphas[i];
        }
        if (!ok) continue;
        if (total > best_total) {
            best_total = total;
            best_mask = mask;
            best_count = 1;
        } else if (total == best_total) {
            ++best_count;
        }
    }

    ExhaustiveSelection out;
    out.best.total = best_total;
    for (std::size_t i = 0; i < count; ++i)
        if (best_mask & (1u << i)) out.best.chosen.push_back(ms[i]);
    out.unique = best_count == 1;
    return out;
}

}  // namespace kfree
