#include "kfree/forest.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace kfree {

const char* to_string(RkMethod m) {
    switch (m) {
        case RkMethod::coprime: return "coprime";
        case RkMethod::km: return "km";
        case RkMethod::k2m: return "k2m";
        case RkMethod::thm5: return "thm5";
        case RkMethod::forest: return "forest";
        case RkMethod::oracle: return "oracle";
    }
    return "?";
}

namespace {

std::uint64_t phi_from_exponents(const std::vector<ModulusPrime>& primes,
                                 const std::vector<std::uint32_t>& d_exps) {
    std::uint64_t phi = 1;
    for (std::size_t i = 0; i < primes.size(); ++i) {
        if (d_exps[i] == 0) continue;
        for (std::uint32_t t = 1; t < d_exps[i]; ++t)
            phi = checked_mul(phi, primes[i].p);
        phi = checked_mul(phi, primes[i].p - 1);
    }
    return phi;
}

std::uint64_t root_valuation_impl(std::uint64_t k, std::uint64_t d,
                                  std::uint64_t phi_d) {
    std::uint64_t l = multiplicative_order(k, d);
    if (phi_d % l != 0)
        throw std::logic_error("root valuation: order does not divide phi");
    return (phi_d / l) * ((l - (l & 1)) / 2);
}

}  // namespace

std::uint64_t root_valuation(std::uint64_t m, const ModulusContext& ctx) {
    auto exps = ctx.exponents_of_divisor(m);
    std::uint64_t d = ctx.n / m;
    if (std::gcd(ctx.k, d) != 1)
        throw std::invalid_argument(
            "root_valuation: gcd(k, n/m) != 1, stratum is not a root");
    std::vector<std::uint32_t> d_exps(exps.size());
    for (std::size_t i = 0; i < exps.size(); ++i)
        d_exps[i] = ctx.primes[i].exp_n - exps[i];
    return root_valuation_impl(ctx.k, d, phi_from_exponents(ctx.primes, d_exps));
}

Forest build_forest(const ModulusContext& ctx) {
    Forest forest;
    forest.ctx = ctx;
    const auto& primes = ctx.primes;
    const std::size_t s = primes.size();

    // Enumerate all divisors with their exponent vectors.
    std::vector<std::pair<std::uint64_t, std::vector<std::uint32_t>>> divs;
    divs.emplace_back(1, std::vector<std::uint32_t>(s, 0));
    for (std::size_t i = 0; i < s; ++i) {
        std::size_t base = divs.size();
        for (std::size_t j = 0; j < base; ++j) {
            std::uint64_t v = divs[j].first;
            for (std::uint32_t e = 1; e <= primes[i].exp_n; ++e) {
                v *= primes[i].p;
                auto exps = divs[j].second;
                exps[i] = e;
                divs.emplace_back(v, std::move(exps));
            }
        }
    }

    for (auto& [m, exps] : divs) {
        DivisorNode node;
        node.m = m;
        node.exponents = exps;

        bool root = true;
        bool leaf = false;
        std::uint32_t jm = 0;
        std::uint64_t parent = m;
        for (std::size_t i = 0; i < s; ++i) {
            if (primes[i].exp_k == 0) continue;
            std::uint32_t room = primes[i].exp_n - exps[i];
            if (room > 0) {
                root = false;
                std::uint32_t step = std::min(primes[i].exp_k, room);
                for (std::uint32_t t = 0; t < step; ++t) parent *= primes[i].p;
                jm = std::max(jm, (room + primes[i].exp_k - 1) / primes[i].exp_k);
            }
            if (exps[i] < std::min(primes[i].exp_k, primes[i].exp_n))
                leaf = true;
        }
        node.is_root = root;
        node.is_leaf = leaf;
        node.level = jm + 1;
        if (!root) node.parent = parent;

        std::vector<std::uint32_t> d_exps(s);
        for (std::size_t i = 0; i < s; ++i)
            d_exps[i] = primes[i].exp_n - exps[i];
        std::uint64_t phi = phi_from_exponents(primes, d_exps);
        node.alpha =
            root ? root_valuation_impl(ctx.k, ctx.n / m, phi) : phi;

        forest.nodes.emplace(m, std::move(node));
    }

    for (auto& [m, node] : forest.nodes) {
        if (node.parent) {
            forest.nodes.at(*node.parent).children.push_back(m);
        } else {
            forest.roots.push_back(m);
        }
    }
    // std::map iteration is ascending, so children and roots already are.
    return forest;
}

Selection select_optimal(const Forest& forest) {
    // Group nodes per tree by walking parent chains (memoized).
    std::unordered_map<std::uint64_t, std::uint64_t> root_of;
    root_of.reserve(forest.nodes.size() * 2);
    for (const auto& [m, node] : forest.nodes) {
        std::uint64_t cur = m;
        std::vector<std::uint64_t> path;
        while (true) {
            auto it = root_of.find(cur);
            if (it != root_of.end()) {
                cur = it->second;
                break;
            }
            const DivisorNode& nd = forest.nodes.at(cur);
            if (!nd.parent) break;
            path.push_back(cur);
            cur = *nd.parent;
        }
        root_of[m] = cur;
        for (std::uint64_t v : path) root_of[v] = cur;
    }

    std::map<std::uint64_t, std::vector<const DivisorNode*>> trees;
    for (const auto& [m, node] : forest.nodes)
        trees[root_of.at(m)].push_back(&node);

    std::unordered_set<std::uint64_t> chosen;
    for (auto& [root, nodes] : trees) {
        std::uint32_t max_level = 0;
        for (const DivisorNode* nd : nodes)
            max_level = std::max(max_level, nd->level);
        std::map<std::uint32_t, std::vector<const DivisorNode*>> by_level;
        for (const DivisorNode* nd : nodes) by_level[nd->level].push_back(nd);

        // Children always sit exactly one level deeper, so sweeping levels
        // bottom-up sees every child before its parent.
        for (std::uint32_t lvl = max_level; lvl >= 1; --lvl) {
            auto it = by_level.find(lvl);
            if (it == by_level.end()) continue;
            for (const DivisorNode* nd : it->second) {
                if (nd->alpha == 0) continue;
                bool child_chosen = false;
                for (std::uint64_t c : nd->children)
                    if (chosen.count(c)) {
                        child_chosen = true;
                        break;
                    }
                if (!child_chosen) chosen.insert(nd->m);
            }
        }
    }

    Selection sel;
    sel.chosen.assign(chosen.begin(), chosen.end());
    std::sort(sel.chosen.begin(), sel.chosen.end());
    for (std::uint64_t m : sel.chosen) sel.total += forest.nodes.at(m).alpha;
    return sel;
}

namespace {

RkValue rk_from_context(const ModulusContext& ctx) {
    Forest forest = build_forest(ctx);
    Selection sel = select_optimal(forest);
    return RkValue{sel.total, RkMethod::forest};
}

}  // namespace

RkValue rk_general(std::uint64_t k, std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("rk_general: n must be >= 1");
    std::uint64_t kr = k % n;
    if (kr == 0) return RkValue{n - 1, RkMethod::forest};
    return rk_from_context(ModulusContext::make(kr, n));
}

RkValue rk_general(std::uint64_t k, const Factorization& n_fact) {
    std::uint64_t n = n_fact.value();
    if (n == 0) throw std::invalid_argument("rk_general: n must be >= 1");
    std::uint64_t kr = k % n;
    if (kr == 0) return RkValue{n - 1, RkMethod::forest};
    ModulusContext ctx;
    ctx.n = n;
    ctx.k = kr;
    ctx.n_fact = n_fact;
    std::uint64_t unit = kr;
    for (const auto& [p, e] : n_fact.factors) {
        std::uint32_t ek = 0;
        while (unit % p == 0) {
            unit /= p;
            ++ek;
        }
        if (ek > 0) ++ctx.shared_count;
        ctx.primes.push_back(ModulusPrime{p, e, ek});
    }
    ctx.unit = unit;
    return rk_from_context(ctx);
}

KFreeSet construct_max_kfree(std::uint64_t k, std::uint64_t n) {
    if (n == 0)
        throw std::invalid_argument("construct_max_kfree: n must be >= 1");
    KFreeSet out{n, k, {}};
    std::uint64_t kr = k % n;
    if (kr == 0) {
        // Everything maps to 0, so any set avoiding 0 works.
        out.elements.reserve(n - 1);
        for (std::uint64_t x = 1; x < n; ++x) out.elements.push_back(x);
        return out;
    }
    ModulusContext ctx = ModulusContext::make(kr, n);
    Forest forest = build_forest(ctx);
    Selection sel = select_optimal(forest);
    out.elements.reserve(sel.total);
    const bool bitmap = n <= (std::uint64_t(1) << 28);
    std::vector<bool> member;
    if (bitmap) member.assign(n, false);
    auto emit = [&](std::uint64_t x) {
        if (bitmap)
            member[x] = true;
        else
            out.elements.push_back(x);
    };
    for (std::uint64_t m : sel.chosen) {
        const DivisorNode& node = forest.nodes.at(m);
        if (node.is_root) {
            for (const auto& cyc : root_stratum_cycles(m, ctx)) {
                std::uint64_t len = cyc.size();
                std::uint64_t picks = (len - (len & 1)) / 2;
                for (std::uint64_t i = 0; i < picks; ++i) emit(cyc[2 * i]);
            }
        } else {
            for (std::uint64_t x : stratum_elements(m, ctx)) emit(x);
        }
    }
    if (bitmap) {
        // Strata are disjoint; an ascending scan emits sorted output.
        for (std::uint64_t x = 0; x < n; ++x)
            if (member[x]) out.elements.push_back(x);
    } else {
        std::sort(out.elements.begin(), out.elements.end());
    }
    return out;
}

namespace {

std::string divisor_label(const std::vector<ModulusPrime>& primes,
                          const std::vector<std::uint32_t>& exps) {
    std::string s;
    for (std::size_t i = 0; i < primes.size(); ++i) {
        if (exps[i] == 0) continue;
        if (!s.empty()) s += "·";
        s += std::to_string(primes[i].p);
        if (exps[i] > 1) s += "^" + std::to_string(exps[i]);
    }
    return s.empty() ? "1" : s;
}

}  // namespace

std::string forest_to_dot(const Forest& forest, const Selection* chosen) {
    std::unordered_set<std::uint64_t> boxed;
    if (chosen) boxed.insert(chosen->chosen.begin(), chosen->chosen.end());

    // Tree membership keyed by root.
    std::map<std::uint64_t, std::vector<const DivisorNode*>> trees;
    for (const auto& [m, node] : forest.nodes) {
        std::uint64_t cur = m;
        while (forest.nodes.at(cur).parent) cur = *forest.nodes.at(cur).parent;
        trees[cur].push_back(&node);
    }

    std::ostringstream os;
    os << "digraph divisor_forest {\n";
    os << "  node [shape=ellipse];\n";
    std::size_t cluster = 0;
    for (const auto& [root, nodes] : trees) {
        os << "  subgraph cluster_" << cluster++ << " {\n";
        os << "    label=\"root "
           << divisor_label(forest.ctx.primes,
                            forest.nodes.at(root).exponents)
           << "\";\n";
        for (const DivisorNode* nd : nodes) {
            os << "    \"" << nd->m << "\" [label=\""
               << divisor_label(forest.ctx.primes, nd->exponents)
               << " (α=" << nd->alpha << ")\"";
            if (boxed.count(nd->m)) os << ", shape=box";
            os << "];\n";
        }
        for (const DivisorNode* nd : nodes)
            for (std::uint64_t c : nd->children)
                os << "    \"" << nd->m << "\" -> \"" << c << "\";\n";
        os << "  }\n";
    }
    os << "}\n";
    return os.str();
}

}  // namespace kfree
