#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <stdexcept>

#include "sigmaval/arith.hpp"
#include "sigmaval/cyclotomic.hpp"
#include "sigmaval/oracle.hpp"

using namespace sigmaval;
using namespace sigmaval::cyclo;

TEST_CASE("eval examples") {
    for (std::uint64_t x : {2, 9, 10, 17}) CHECK(eval(1, x) == x - 1);
    CHECK(eval(4, 2) == 5);
    CHECK(eval(6, 10) == 91);    // X^2 - X + 1 at 10
    CHECK(eval(2, 10) == 11);
    CHECK(eval(12, 2) == 13);    // X^4 - X^2 + 1 at 2
    CHECK_THROWS_AS(eval(0, 5), std::invalid_argument);
    CHECK_THROWS_AS(eval(4, 1), std::invalid_argument);
    CHECK_THROWS_AS(eval(4, 0), std::invalid_argument);
}

TEST_CASE("product over divisors rebuilds x^m - 1") {
    for (std::uint64_t m = 1; m <= 40; ++m) {
        for (std::uint64_t x : {2, 3, 10, 20}) {
            BigNat product = 1;
            for (std::uint64_t d : arith::divisors(m)) product *= eval(d, x);
            BigNat expected;
            mpz_ui_pow_ui(expected.get_mpz_t(), x, m);
            expected -= 1;
            CHECK(product == expected);
        }
    }
}

TEST_CASE("degree: phi_m(x) tracks x^totient(m) at large x") {
    const std::uint64_t x = 1000000;
    for (std::uint64_t m = 1; m <= 40; ++m) {
        const BigNat value = eval(m, x);
        BigNat scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), x, arith::totient(m));
        // the correction product at x = 10^6 is within 1 +- 2*10^-6
        CHECK(value * 1000000 > scale * 999998);
        CHECK(value * 1000000 < scale * 1000002);
    }
}

TEST_CASE("bounds bracket the exact value") {
    const Bounds b42 = bounds(4, 2, 20);
    CHECK(b42.lower <= 5.0);
    CHECK(5.0 <= b42.upper);

    for (std::uint64_t depth : {1, 5, 30}) {
        const Bounds b = bounds(1, 10, depth);
        CHECK(b.lower <= 9.0);
        CHECK(9.0 <= b.upper);
    }

    // c(10) = prod (1 - 10^-j) ~ 0.8900100999; the bracket sits inside
    // [0.88 * 10^2, 10^2 / 0.88] and still contains 91.
    const Bounds b610 = bounds(6, 10, 20);
    CHECK(b610.lower <= 91.0);
    CHECK(91.0 <= b610.upper);
    CHECK(b610.lower >= 0.88 * 100.0);
    CHECK(b610.upper <= 100.0 / 0.88);

    CHECK_THROWS_AS(bounds(0, 10, 5), std::invalid_argument);
    CHECK_THROWS_AS(bounds(4, 1, 5), std::invalid_argument);
    CHECK_THROWS_AS(bounds(4, 10, 0), std::invalid_argument);
}

TEST_CASE("bounds stay valid at any depth") {
    // The lower end climbs toward the limit product as depth grows; the
    // upper end relaxes toward it from below.  Validity holds throughout.
    for (std::uint64_t m = 1; m <= 30; ++m) {
        for (std::uint64_t x = 2; x <= 6; ++x) {
            const double exact = mpz_get_d(eval(m, x).get_mpz_t());
            const Bounds shallow = bounds(m, x, 2);
            const Bounds deep = bounds(m, x, 30);
            CHECK(shallow.lower <= exact);
            CHECK(exact <= shallow.upper);
            CHECK(deep.lower <= exact);
            CHECK(exact <= deep.upper);
            CHECK(shallow.lower <= deep.lower);
            CHECK(shallow.upper <= deep.upper);
        }
    }
}

TEST_CASE("divides_iff_order examples") {
    DivisibilityOrder r = divides_iff_order(5, 4, 2);
    CHECK(r.divides);
    CHECK(r.is_order);

    r = divides_iff_order(5, 2, 2);
    CHECK_FALSE(r.divides);
    CHECK_FALSE(r.is_order);

    r = divides_iff_order(7, 1, 8);
    CHECK(r.divides);
    CHECK(r.is_order);

    CHECK_THROWS_AS(divides_iff_order(5, 10, 2), std::invalid_argument);  // q | m
    CHECK_THROWS_AS(divides_iff_order(5, 4, 10), std::invalid_argument);  // q | n
    CHECK_THROWS_AS(divides_iff_order(6, 5, 2), std::invalid_argument);   // q not prime
}

TEST_CASE("divisibility criterion is an equivalence") {
    for (std::uint64_t q : {3, 5, 7, 11, 13}) {
        for (std::uint64_t n = 2; n <= 40; ++n) {
            if (n % q == 0) continue;
            for (std::uint64_t m : arith::divisors(q - 1)) {
                const DivisibilityOrder r = divides_iff_order(q, m, n);
                CHECK(r.divides == r.is_order);
            }
        }
    }
}

TEST_CASE("val_q_phi examples") {
    CHECK(val_q_phi(2, 5) == 1);   // 2^4 - 1 = 15
    CHECK(val_q_phi(3, 7) == 1);   // 3^6 - 1 = 728 = 2^3 * 7 * 13
    CHECK(val_q_phi(2, 7) == 1);   // 2^3 - 1 = 7
    CHECK(val_q_phi(7, 5) == 2);   // ord_5(7) = 4, 7^4 - 1 = 2400 = 2^5 * 3 * 5^2
    CHECK_THROWS_AS(val_q_phi(18, 7), std::invalid_argument);  // p not prime
    CHECK_THROWS_AS(val_q_phi(7, 7), std::invalid_argument);
    CHECK_THROWS_AS(val_q_phi(3, 2), std::invalid_argument);
}

TEST_CASE("val_q_phi is positive and matches the cyclotomic value") {
    for (std::uint64_t p = 2; p <= 100; ++p) {
        if (!arith::is_prime(p)) continue;
        for (std::uint64_t q = 3; q <= 100; ++q) {
            if (!arith::is_prime(q) || p == q) continue;
            const std::uint64_t v = val_q_phi(p, q);
            CHECK(v >= 1);
            // the q-part of p^w - 1 is concentrated in Phi_w(p)
            const std::uint64_t w = arith::mult_order(p, q);
            CHECK(v == oracle::big_valuation(eval(w, p), q));
        }
    }
}
