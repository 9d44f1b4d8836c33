#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <random>
#include <set>
#include <stdexcept>
#include <string>

#include "sigmaval/oracle.hpp"

using namespace sigmaval;
using namespace sigmaval::oracle;

TEST_CASE("sigma_k examples") {
    CHECK(sigma_k(1, 1) == 1);
    CHECK(sigma_k(1, 7) == 1);
    CHECK(sigma_k(6, 1) == 12);
    CHECK(sigma_k(2, 2) == 5);
    CHECK(sigma_k(12, 1) == 28);
    CHECK_THROWS_AS(sigma_k(0, 1), std::invalid_argument);
    CHECK_THROWS_AS(sigma_k(6, 0), std::invalid_argument);
}

TEST_CASE("sigma_k product formula agrees with the divisor sum") {
    for (std::uint64_t n = 1; n <= 10000; ++n)
        for (std::uint64_t k = 1; k <= 5; ++k)
            CHECK(sigma_k(n, k) == sigma_k_divisor_sum(n, k));
}

TEST_CASE("sigma_k is multiplicative on coprime parts") {
    for (std::uint64_t m = 2; m <= 5000; ++m) {
        for (std::uint64_t n = m + 1; m * n <= 10000; ++n) {
            if (std::gcd(m, n) != 1) continue;
            for (std::uint64_t k = 1; k <= 5; ++k)
                CHECK(sigma_k(m * n, k) == sigma_k(m, k) * sigma_k(n, k));
        }
    }
}

TEST_CASE("big_valuation by repeated division") {
    CHECK(big_valuation(BigNat(45), 3) == 2);
    CHECK(big_valuation(BigNat(45), 5) == 1);
    CHECK(big_valuation(BigNat(45), 7) == 0);
    BigNat huge;
    mpz_ui_pow_ui(huge.get_mpz_t(), 5, 120);
    CHECK(big_valuation(huge * 7, 5) == 120);
    CHECK_THROWS_AS(big_valuation(BigNat(0), 5), std::invalid_argument);
    CHECK_THROWS_AS(big_valuation(BigNat(10), 6), std::invalid_argument);
}

TEST_CASE("oracle_valuation examples") {
    CHECK(oracle_valuation(2, 2, 5) == 1);
    CHECK(oracle_valuation(1, 3, 7) == 0);
    // sigma_k(q^nu) == 1 (mod q), so the q-adic valuation vanishes
    for (std::uint64_t q : {3, 5, 7}) {
        std::uint64_t qn = q;
        for (int nu = 1; nu <= 4; ++nu, qn *= q)
            for (std::uint64_t k = 1; k <= 4; ++k)
                CHECK(oracle_valuation(qn, k, q) == 0);
    }
    CHECK(oracle_valuation(12, 1, 2) == 2);  // sigma(12) = 28
}

TEST_CASE("lte examples") {
    CHECK(lte(4, 1, 3, 3) == 2);    // 4^3 - 1 = 63 = 3^2 * 7
    CHECK(lte(10, 1, 9, 3) == 4);   // 10^9 - 1 = 3^4 * 12345679
    CHECK(lte(8, 3, 1, 5) == 1);    // m = 1 reduces to v_q(a - b)
    CHECK(lte(12, 2, 1, 5) == 1);
    CHECK(lte(2, -3, 7, 5) == 1);   // negative b is fine
}

TEST_CASE("lte rejects each violated precondition with its own diagnostic") {
    std::set<std::string> messages;
    const auto capture = [&](auto&& call) {
        try {
            call();
            FAIL("expected an exception");
        } catch (const std::invalid_argument& e) {
            messages.insert(e.what());
        }
    };
    capture([] { lte(5, 5, 3, 7); });    // a == b
    capture([] { lte(14, 7, 3, 7); });   // q | ab
    capture([] { lte(3, 5, 2, 7); });    // q does not divide a - b
    capture([] { lte(8, 1, 0, 7); });    // m < 1
    CHECK(messages.size() == 4);
    CHECK_THROWS_AS(lte(4, 2, 3, 2), std::invalid_argument);   // q must be odd
    CHECK_THROWS_AS(lte(10, 1, 3, 9), std::invalid_argument);  // q must be prime
}

TEST_CASE("lte matches direct big-integer valuation on random tuples") {
    const std::uint64_t qs[] = {3, 5, 7, 11, 13};
    std::mt19937_64 rng(0);
    int done = 0;
    while (done < 500) {
        const std::uint64_t q = qs[rng() % 5];
        const std::int64_t a = static_cast<std::int64_t>(1 + rng() % 1000);
        if (a % static_cast<std::int64_t>(q) == 0) continue;
        // b == a (mod q), 1 <= b <= 1000, b != a; q does not divide b since b == a
        const std::int64_t b =
            a % static_cast<std::int64_t>(q) + static_cast<std::int64_t>(q * (rng() % (1000 / q)));
        if (b == a || b < 1 || b > 1000) continue;
        const std::uint64_t m = 1 + rng() % 50;

        BigNat am, bm;
        mpz_ui_pow_ui(am.get_mpz_t(), static_cast<unsigned long>(a), m);
        mpz_ui_pow_ui(bm.get_mpz_t(), static_cast<unsigned long>(b), m);
        const BigNat diff = a > b ? am - bm : bm - am;
        CHECK(lte(a, b, m, q) == big_valuation(diff, q));
        ++done;
    }
}
