#pragma once

#include <cstdint>

#include "sigmaval/bignat.hpp"

// Cyclotomic polynomial values Phi_m(x) at integer points, evaluated through
// the Moebius product of (x^d - 1) factors.  Coefficients are never expanded,
// so the notorious coefficient growth of Phi_m for composite m never shows up.

namespace sigmaval::cyclo {

inline constexpr std::uint64_t default_depth = 30;

// Bracketing interval around Phi_m(n) derived from
//   prod_{j>=1} (1 - n^-j) * n^phi(m)  <=  Phi_m(n)  <=  n^phi(m) / prod(...).
// The infinite product is truncated at `truncation_depth` terms; the lower
// bound carries one extra pessimistic factor for the discarded tail, so the
// bracket stays valid at any depth.  Bounds may be +inf when n^phi(m)
// overflows a double; the bracket is only meaningful while finite.
struct Bounds {
    std::uint64_t m;
    std::uint64_t n;
    double lower;
    double upper;
    std::uint64_t truncation_depth;
};

// The two sides of the divisibility criterion: q | Phi_m(n) on the left,
// m == ord_q(n) on the right.  They are provably equal whenever q does not
// divide m; the operation returns both so tests can assert the equivalence
// instead of assuming it.
struct DivisibilityOrder {
    bool divides;
    bool is_order;
};

// Exact Phi_m(x) for x >= 2: quotient of prod (x^d - 1) over d | m with
// mu(m/d) = +1 by the product over mu(m/d) = -1.  The division is exact.
BigNat eval(std::uint64_t m, std::uint64_t x);

Bounds bounds(std::uint64_t m, std::uint64_t n, std::uint64_t depth = default_depth);

// Requires q prime, q coprime to both m and n, n >= 2.
DivisibilityOrder divides_iff_order(std::uint64_t q, std::uint64_t m, std::uint64_t n);

// v_q(Phi_{w}(p)) where w = ord_q(p), computed as the exact q-valuation of
// p^w - 1 (the two agree: Phi_d(p) contributes to v_q(p^w - 1) only at
// d = w).  Always >= 1 since q | p^w - 1 by definition of the order.
std::uint64_t val_q_phi(std::uint64_t p, std::uint64_t q);

}  // namespace sigmaval::cyclo
