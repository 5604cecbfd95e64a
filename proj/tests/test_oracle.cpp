#include <doctest.h>

#include <stdexcept>
#include <cstdint>
#include <numeric>

#include "kfree/arith.hpp"
#include "kfree/forest.hpp"
#include "kfree/oracle.hpp"

using namespace kfree;

TEST_CASE("exhaustive oracle on tiny moduli") {
    CHECK(oracle_rk_exhaustive(2, 7) == 2);
    CHECK(oracle_rk_exhaustive(1, 9) == 0);
    CHECK(oracle_rk_exhaustive(1, 1) == 0);
    CHECK(oracle_rk_exhaustive(2, 12) == 7);
    CHECK(oracle_rk_exhaustive(0, 12) == 11);
    CHECK_THROWS_AS((oracle_rk_exhaustive(2, 21)), std::invalid_argument);
}

TEST_CASE("the two rk oracles agree on the shared domain") {
    for (std::uint64_t n = 1; n <= 20; ++n)
        for (std::uint64_t k = 0; k <= 20; ++k)
            REQUIRE(oracle_rk_exhaustive(k, n) == oracle_rk_pseudoforest(k, n));
}

TEST_CASE("pseudoforest oracle at scale") {
    CHECK(oracle_rk_pseudoforest(2, 1 << 10) == 682);
    CHECK(oracle_rk_pseudoforest(2, 1000000) > 0);
    CHECK_THROWS_AS((oracle_rk_pseudoforest(2, 1000001)), std::invalid_argument);
}

TEST_CASE("census matches the strata picture") {
    for (std::uint64_t n : {12, 36, 100, 210, 729, 1024, 5000, 9999}) {
        for (std::uint64_t k : {1, 2, 3, 6, 10, 15}) {
            auto census = pseudoforest_census(k, n);
            // Fixed points are the solutions of (k-1)x = 0.
            CHECK(census.fixed_points == std::gcd(k - 1, n));
            // Each root stratum contributes phi(n/m)/order cycles.
            std::uint64_t expected = 0;
            for (std::uint64_t m = 1; m <= n; ++m) {
                if (n % m != 0) continue;
                std::uint64_t d = n / m;
                if (std::gcd(k, d) != 1) continue;
                std::uint64_t l = multiplicative_order(k, d);
                expected += euler_phi(factorize(d)) / l;
            }
            CHECK(census.cycles == expected);
        }
    }
}

TEST_CASE("tilde oracle on tiny intervals") {
    CHECK(oracle_tilde_exhaustive(2, 10) == 6);
    CHECK(oracle_tilde_exhaustive(2, 1) == 1);
    CHECK(oracle_tilde_exhaustive(3, 9) == 6);
    CHECK(oracle_tilde_exhaustive(2, 4) == 2);
    CHECK_THROWS_AS((oracle_tilde_exhaustive(2, 19)), std::invalid_argument);
    CHECK_THROWS_AS((oracle_tilde_exhaustive(1, 5)), std::invalid_argument);
}

TEST_CASE("selection oracle on small forests") {
    {
        auto forest = build_forest(ModulusContext::make(2, 12));
        auto res = oracle_selection_exhaustive(forest);
        CHECK(res.best.chosen == std::vector<std::uint64_t>{1, 3, 4});
        CHECK(res.best.total == 7);
        CHECK(res.unique);
    }
    {
        auto forest = build_forest(ModulusContext::make(12, 16));
        auto res = oracle_selection_exhaustive(forest);
        CHECK(res.best.chosen == std::vector<std::uint64_t>{1, 2});
        CHECK(res.best.total == 12);
        CHECK(res.unique);
    }
    {
        // A single root with zero valuation: nothing selectable.
        auto forest = build_forest(ModulusContext::make(1, 7));
        // k = 1 keeps every node a root with valuation 0.
        auto res = oracle_selection_exhaustive(forest);
        CHECK(res.best.chosen.empty());
        CHECK(res.best.total == 0);
        CHECK(res.unique);
    }
}
