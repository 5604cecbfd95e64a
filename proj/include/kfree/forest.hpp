#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kfree/strata.hpp"

namespace kfree {

/// Node of the divisor forest: one per divisor m of n, connected to
/// k * m when multiplication by k moves the stratum.
struct DivisorNode {
    std::uint64_t m = 1;
    std::vector<std::uint32_t> exponents;  // aligned with ctx.primes
    std::uint32_t level = 1;               // roots sit at level 1
    std::optional<std::uint64_t> parent;
    std::vector<std::uint64_t> children;   // ascending
    std::uint64_t alpha = 0;
    bool is_root = false;
    bool is_leaf = false;
};

struct Forest {
    ModulusContext ctx;
    std::map<std::uint64_t, DivisorNode> nodes;
    std::vector<std::uint64_t> roots;  // ascending
};

struct Selection {
    std::vector<std::uint64_t> chosen;  // ascending divisor values
    std::uint64_t total = 0;
};

enum class RkMethod { coprime, km, k2m, thm5, forest, oracle };
const char* to_string(RkMethod m);

struct RkValue {
    std::uint64_t value;
    RkMethod method;
};

/// A k-free subset of Z/nZ together with its modulus and multiplier.
struct KFreeSet {
    std::uint64_t n;
    std::uint64_t k;
    std::vector<std::uint64_t> elements;  // ascending
};

Forest build_forest(const ModulusContext& ctx);

/// Largest k-free subset of the stratum A_m when the stratum maps to itself:
/// one run of alternating picks per cycle. Requires gcd(k, n/m) = 1.
std::uint64_t root_valuation(std::uint64_t m, const ModulusContext& ctx);

/// Bottom-up level sweep; per tree, keeps a node iff its valuation is nonzero
/// and none of its children were kept. Unique optimum for forests whose
/// valuations strictly increase down every branch.
Selection select_optimal(const Forest& forest);

/// Exact maximum size of a k-free set in Z/nZ, any k >= 0 (k is reduced
/// mod n; k = 0 mod n short-circuits to n - 1).
RkValue rk_general(std::uint64_t k, std::uint64_t n);
RkValue rk_general(std::uint64_t k, const Factorization& n_fact);

/// A witness of rk_general: whole strata for the chosen interior nodes plus
/// alternating cycle picks inside the chosen roots.
KFreeSet construct_max_kfree(std::uint64_t k, std::uint64_t n);

/// Deterministic DOT rendering, one cluster per tree, nodes ascending.
/// Chosen nodes are drawn as boxes when a selection is supplied.
std::string forest_to_dot(const Forest& forest,
                          const Selection* chosen = nullptr);

}  // namespace kfree
