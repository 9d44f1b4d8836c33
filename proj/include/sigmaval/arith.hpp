#pragma once

#include <cstdint>
#include <utility>
#include <vector>

// Elementary number-theoretic primitives on 64-bit unsigned integers.
// Everything here is a pure function; intermediate products are widened
// to 128 bits so no operation overflows for any 64-bit input.

namespace sigmaval::arith {

struct PrimePower {
    std::uint64_t prime;
    std::uint64_t exponent;

    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

// Canonical factorization: primes strictly ascending, exponents >= 1,
// empty list for n = 1. `value` is the integer the list multiplies out to.
struct Factorization {
    std::vector<PrimePower> pairs;
    std::uint64_t value = 1;

    friend bool operator==(const Factorization&, const Factorization&) = default;
};

// The order triple attached to a prime p relative to (q, k):
// omega1 = ord_q(p), omegak = ord_q(p^k), dk = gcd(k, omega1).
// Invariant: omegak * dk == omega1, and omega1 | q - 1.
struct OrderData {
    std::uint64_t p = 0;
    std::uint64_t q = 0;
    std::uint64_t k = 0;
    std::uint64_t omega1 = 0;
    std::uint64_t omegak = 0;
    std::uint64_t dk = 0;

    friend bool operator==(const OrderData&, const OrderData&) = default;
};

struct ArithStats {
    std::uint64_t tau;    // number of divisors
    std::uint64_t omega;  // number of distinct prime divisors
    std::uint64_t gamma;  // squarefree kernel, product of distinct primes
};

// Largest a with p^a | n.  Rejects n = 0 and non-prime p.
std::uint64_t valuation(std::uint64_t n, std::uint64_t p);

// base^exp mod modulus with 128-bit intermediates.  Rejects modulus < 2.
std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t modulus);

// Smallest m >= 1 with p^m == 1 (mod q), for prime q and gcd(p, q) = 1.
// Factors q - 1 and strips prime factors; O(polylog q) instead of a scan.
std::uint64_t mult_order(std::uint64_t p, std::uint64_t q);

// Assembles the (omega1, omegak, dk) triple.  Requires p prime, q odd
// prime, p != q, k >= 1.
OrderData order_data(std::uint64_t p, std::uint64_t q, std::uint64_t k);

// Trial division by primes up to 10^6, then deterministic Miller-Rabin
// plus Pollard rho for what remains.  Exact for all 64-bit inputs.
Factorization factorize(std::uint64_t n);

// Deterministic primality for the full 64-bit range (fixed witness set,
// no error probability).
bool is_prime(std::uint64_t n);

// Euler totient, via factorize.
std::uint64_t totient(std::uint64_t m);

// 0 if m is not squarefree, else (-1)^{number of prime factors}.
int mobius(std::uint64_t m);

// (tau, omega, gamma) of n >= 2 in one factorization pass.
ArithStats arith_stats(std::uint64_t n);

// All positive divisors of m, ascending.
std::vector<std::uint64_t> divisors(std::uint64_t m);

}  // namespace sigmaval::arith
