#include <doctest.h>

#include <stdexcept>
#include <cstdint>
#include <numeric>
#include <random>

#include "kfree/arith.hpp"

using namespace kfree;

namespace {

// Oracles for this file: straight-line reimplementations.
bool trial_division_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::uint64_t coprime_count(std::uint64_t n) {
    std::uint64_t c = 0;
    for (std::uint64_t x = 1; x <= n; ++x)
        if (std::gcd(x, n) == 1) ++c;
    return c;
}

std::uint64_t order_by_iteration(std::uint64_t k, std::uint64_t d) {
    std::uint64_t cur = k % d, l = 1;
    while (cur != 1) {
        cur = cur * k % d;
        ++l;
    }
    return l;
}

Factorization fact_of(std::initializer_list<std::pair<std::uint64_t, std::uint32_t>> fs) {
    Factorization f;
    for (auto& pe : fs) f.factors.push_back(pe);
    return f;
}

}  // namespace

TEST_CASE("factorize canonical outputs") {
    CHECK(factorize(826875) == fact_of({{3, 3}, {5, 4}, {7, 2}}));
    CHECK(factorize(1) == fact_of({}));
    CHECK(trial_division_prime(8191));
    CHECK(factorize(8191) == fact_of({{8191, 1}}));
    CHECK(factorize(2) == fact_of({{2, 1}}));
    CHECK_THROWS_AS((factorize(0)), std::invalid_argument);
}

TEST_CASE("factorize is deterministic") {
    for (std::uint64_t n :
         {std::uint64_t(1) << 62, std::uint64_t(999999999999999989ULL),
          std::uint64_t(614889782588491410ULL),  // product of primes to 47
          std::uint64_t(9223372036854775807ULL)}) {
        CHECK(factorize(n) == factorize(n));
        CHECK(factorize(n).value() == n);
    }
}

TEST_CASE("euler_phi examples") {
    CHECK(euler_phi(fact_of({})) == 1);
    CHECK(euler_phi(fact_of({{3, 2}})) == coprime_count(9));
    CHECK(euler_phi(fact_of({{3, 2}})) == 6);
    CHECK(euler_phi(fact_of({{3, 3}, {5, 4}, {7, 2}})) == 378000);
    for (std::uint64_t n = 1; n <= 300; ++n)
        CHECK(euler_phi(factorize(n)) == coprime_count(n));
}

TEST_CASE("divisors examples") {
    auto ds = divisors(factorize(12));
    std::vector<std::uint64_t> values;
    for (const auto& d : ds) values.push_back(d.value());
    CHECK(values == std::vector<std::uint64_t>{1, 2, 3, 4, 6, 12});

    CHECK(divisors(factorize(1)).size() == 1);
    CHECK(divisors(factorize(1))[0].value() == 1);
    CHECK(divisors(factorize(826875)).size() == 60);
}

TEST_CASE("multiplicative_order examples") {
    CHECK(multiplicative_order(2, 7) == order_by_iteration(2, 7));
    CHECK(multiplicative_order(2, 7) == 3);
    CHECK(multiplicative_order(5, 1) == 1);
    CHECK(multiplicative_order(123456789, 1) == 1);
    CHECK(multiplicative_order(2, 8191) == 13);
    CHECK_THROWS_AS((multiplicative_order(6, 9)), std::invalid_argument);
    CHECK_THROWS_AS((multiplicative_order(0, 5)), std::invalid_argument);
}

TEST_CASE("totient sums over divisors reproduce n") {
    const std::uint64_t limit = 100000;
    std::vector<std::uint64_t> phi(limit + 1);
    for (std::uint64_t d = 1; d <= limit; ++d) phi[d] = euler_phi(factorize(d));
    std::vector<std::uint64_t> acc(limit + 1, 0);
    for (std::uint64_t d = 1; d <= limit; ++d)
        for (std::uint64_t n = d; n <= limit; n += d) acc[n] += phi[d];
    for (std::uint64_t n = 1; n <= limit; ++n) REQUIRE(acc[n] == n);
}

TEST_CASE("order divides phi and is minimal") {
    std::mt19937_64 rng(20240811);
    for (int trial = 0; trial < 400; ++trial) {
        std::uint64_t d = rng() % 5000 + 2;
        std::uint64_t k = rng() % 5000 + 2;
        if (std::gcd(k, d) != 1) continue;
        std::uint64_t l = multiplicative_order(k, d);
        std::uint64_t phi = euler_phi(factorize(d));
        REQUIRE(phi % l == 0);
        REQUIRE(pow_mod(k, l, d) == 1);
        for (const auto& [p, e] : factorize(l).factors) {
            (void)e;
            REQUIRE(pow_mod(k, l / p, d) != 1);
        }
    }
}

TEST_CASE("factorize round-trips every n up to 1e6") {
    for (std::uint64_t n = 1; n <= 1000000; ++n) {
        Factorization f = factorize(n);
        std::uint64_t prod = 1;
        for (const auto& [p, e] : f.factors) {
            REQUIRE(e >= 1);
            for (std::uint32_t i = 0; i < e; ++i) prod *= p;
        }
        REQUIRE(prod == n);
    }
}

TEST_CASE("factorize round-trips random 63-bit inputs") {
    std::mt19937_64 rng(987654321);
    for (int trial = 0; trial < 10000; ++trial) {
        std::uint64_t n = rng() >> 1;
        if (n == 0) n = 1;
        Factorization f = factorize(n);
        REQUIRE(f.value() == n);
        std::uint64_t prev = 0;
        for (const auto& [p, e] : f.factors) {
            REQUIRE(p > prev);
            REQUIRE(is_prime(p));
            prev = p;
        }
    }
}

TEST_CASE("is_prime agrees with trial division") {
    for (std::uint64_t n = 0; n <= 3000; ++n)
        CHECK(is_prime(n) == trial_division_prime(n));
    CHECK(is_prime((std::uint64_t(1) << 61) - 1));
    CHECK_FALSE(is_prime((std::uint64_t(1) << 59) - 1));
}

TEST_CASE("checked_mul rejects overflow") {
    CHECK(checked_mul(3, 5) == 15);
    CHECK_THROWS_AS((checked_mul(std::uint64_t(1) << 32, std::uint64_t(1) << 32)), std::overflow_error);
}
