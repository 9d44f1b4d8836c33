#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "sigmaval/arith.hpp"

// The exact q-adic valuation of sigma_k(n), computed without ever
// materializing sigma_k(n):
//
//   v_q(sigma_k(n)) = sum over p^a || n with p^k == 1 (mod q) of v_q(a+1)
//                   + sum over p^a || n with p != q, p^k != 1 (mod q) and
//                     ord_q(p^k) | a+1 of v_q(a+1) + v_q(k) + v_q(Phi_w(p)),
//
// with w = ord_q(p), for odd prime q.  The q = 2 counterpart is
//
//   v_2(sigma_k(n)) = sum over p^a || n, p odd, 2 | a+1 of
//                     v_2(a+1) + v_2(p^k + 1) - 1.
//
// Alongside the exact values, two explicit upper bounds: the ceiling bound
// ceil(k log n / log q) and the three-term bound driven by M_{q,k}.

namespace sigmaval::formula {

// How a prime power p^a of n enters the valuation:
//   UNIT_Q -- p = q, contributes 0
//   SUM_A  -- p^k == 1 (mod q), contributes v_q(a+1)
//   SUM_B  -- p^k != 1 (mod q) and ord_q(p^k) | a+1, contributes
//             v_q(a+1) + v_q(k) + v_q(Phi_{ord_q(p)}(p)), always >= 1
//   ZERO   -- p^k != 1 (mod q) and ord_q(p^k) does not divide a+1
enum class TermCategory { UNIT_Q, SUM_A, SUM_B, ZERO };

std::string_view category_name(TermCategory c);

struct TermBreakdown {
    std::uint64_t p = 0;
    std::uint64_t alpha = 0;
    TermCategory category = TermCategory::ZERO;
    std::uint64_t v_alpha = 0;  // v_q(alpha + 1)
    std::uint64_t v_k = 0;      // v_q(k), SUM_B only
    std::uint64_t v_phi = 0;    // v_q(Phi_{ord_q(p)}(p)), SUM_B only
    std::optional<arith::OrderData> order;
    std::uint64_t contribution = 0;
};

// Total valuation plus one classified term per prime power of n.
// total == sum_a + sum_b == sum of the contributions.
struct ValuationBreakdown {
    std::uint64_t n = 0;
    std::uint64_t q = 0;
    std::uint64_t k = 0;
    std::vector<TermBreakdown> terms;
    std::uint64_t sum_a = 0;
    std::uint64_t sum_b = 0;
    std::uint64_t total = 0;
};

// n = q^nu * a * b with a collecting the prime powers p^k == 1 (mod q)
// and b the rest (p != q, p^k != 1 (mod q)); gcd(value(a), value(b)) = 1.
struct Decomposition {
    std::uint64_t nu = 0;
    arith::Factorization a;
    arith::Factorization b;
};

// M_{q,k} two ways.  `paper` maximizes phi(ord_q(p)) over primes p <= q-1
// with p^k != 1 (mod q); `safe` takes the same maximum over every residue
// r in [2, q-1] with r^k != 1 (mod q).  Primes dividing n enter the bound
// only through their residues mod q, and some residues are not primes
// <= q-1, so `safe` dominates by construction; the two are reported side
// by side rather than silently merged.  Empty set means 0.
struct MqkValues {
    std::uint64_t paper = 0;
    std::uint64_t safe = 0;
};

enum class MVariant { paper, safe };

struct BoundReport {
    std::uint64_t n = 0;
    std::uint64_t q = 0;
    std::uint64_t k = 0;
    std::uint64_t m_qk = 0;       // prime-maximum variant
    std::uint64_t m_qk_safe = 0;  // residue-maximum variant
    double term_kernel = 0;      // M * log gamma(n) / log q
    double term_middle = 0;      // (1.385 log k + 1.066) log n / (log q log log n)
    double term_tail = 0;        // 4 (log log log n + 1) / log q
    double corollary_total = 0;  // kernel + middle + tail
    double corollary_weak = 0;   // q-2 in place of M
    std::uint64_t zhao = 0;      // ceil(k log n / log q), exact
};

struct BoundComparison {
    std::uint64_t actual = 0;
    double corollary = 0;
    std::uint64_t zhao = 0;
    bool corollary_tighter = false;
};

// Absolute slack used when asserting the strict corollary inequality on
// doubles; the inequality has generous margin at desk scale.
inline constexpr double bound_slack = 1e-9;

Decomposition decompose(std::uint64_t n, std::uint64_t q, std::uint64_t k);

TermBreakdown prime_power_term(std::uint64_t p, std::uint64_t alpha,
                               std::uint64_t q, std::uint64_t k);

// Exact v_q(sigma_k(n)) for odd prime q, with the per-prime breakdown.
// Runtime is polynomial in log n once n is factored.
ValuationBreakdown sigma_valuation(std::uint64_t n, std::uint64_t q, std::uint64_t k);
ValuationBreakdown sigma_valuation(const arith::Factorization& f,
                                   std::uint64_t q, std::uint64_t k);

// Exact v_2(sigma_k(n)).  sum_a is always 0 here; contributing terms carry
// v_2(alpha+1) in v_alpha and v_2(p^k + 1) - 1 in v_phi.
ValuationBreakdown sigma_valuation_q2(std::uint64_t n, std::uint64_t k);
ValuationBreakdown sigma_valuation_q2(const arith::Factorization& f, std::uint64_t k);

MqkValues m_qk(std::uint64_t q, std::uint64_t k);

// Least t >= 0 with q^t >= n^k, by exact big-integer comparison (equal to
// ceil(k log n / log q); floating-point ceilings are off-by-one-prone near
// exact powers).  Valid for every prime q >= 2.
std::uint64_t zhao_bound(std::uint64_t n, std::uint64_t q, std::uint64_t k);

// The three-term upper bound for n >= 3 and odd prime q.  The 1.385 log k
// part of the middle term is dropped when v_q(k) = 0.  `variant` selects
// which M_{q,k} feeds the kernel term; both values are reported.
BoundReport corollary_bound(std::uint64_t n, std::uint64_t q, std::uint64_t k,
                            MVariant variant = MVariant::safe);
BoundReport corollary_bound(std::uint64_t n, std::uint64_t q, std::uint64_t k,
                            MVariant variant, const MqkValues& m);

BoundComparison compare_bounds(std::uint64_t n, std::uint64_t q, std::uint64_t k,
                               MVariant variant = MVariant::safe);

}  // namespace sigmaval::formula
