#pragma once

#include <cstdint>

#include "sigmaval/arith.hpp"
#include "sigmaval/bignat.hpp"

// Ground truth by brute force: sigma_k(n) is materialized exactly and the
// q-adic valuation is extracted by repeated division.  Nothing in this
// namespace calls the formula or cyclotomic code -- disagreement between
// the two routes is what the verification sweeps are looking for.

namespace sigmaval::oracle {

// Exact sigma_k(n), multiplicatively: prod over p^a || n of
// (p^{k(a+1)} - 1) / (p^k - 1).
BigNat sigma_k(std::uint64_t n, std::uint64_t k);
BigNat sigma_k(const arith::Factorization& f, std::uint64_t k);

// Exact sigma_k(n) the slow way, summing d^k over every divisor.
// Self-check path for the product formula at small n.
BigNat sigma_k_divisor_sum(std::uint64_t n, std::uint64_t k);

// Number of times prime q divides `value`, by repeated exact division.
// valuation of 0 is undefined and rejected.
std::uint64_t big_valuation(const BigNat& value, std::uint64_t q);

// v_q(sigma_k(n)).  q = 2 is permitted.
std::uint64_t oracle_valuation(std::uint64_t n, std::uint64_t k, std::uint64_t q);

// Lifting-the-exponent: v_q(a^m - b^m) = v_q(a - b) + v_q(m) for odd prime
// q with q | a - b, q coprime to ab, a != b, m >= 1.  Returns the right-hand
// side; each violated precondition is rejected with its own diagnostic.
std::uint64_t lte(std::int64_t a, std::int64_t b, std::uint64_t m, std::uint64_t q);

}  // namespace sigmaval::oracle
