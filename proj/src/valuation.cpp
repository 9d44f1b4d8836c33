#include "sigmaval/valuation.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "sigmaval/bignat.hpp"
#include "sigmaval/cyclotomic.hpp"

namespace sigmaval::formula {

namespace {

void require_odd_prime(std::uint64_t q, const char* where) {
    if (!arith::is_prime(q) || q == 2)
        throw std::invalid_argument(std::string(where) + ": q must be an odd prime");
}

void require_k(std::uint64_t k, const char* where) {
    if (k == 0) throw std::invalid_argument(std::string(where) + ": k must be >= 1");
}

std::uint64_t pow_u64(std::uint64_t p, std::uint64_t e) {
    std::uint64_t r = 1;
    while (e-- > 0) r *= p;
    return r;
}

// Term classification with preconditions already checked: p prime, p != q,
// q odd prime, alpha >= 1, k >= 1.
TermBreakdown classify_coprime_term(std::uint64_t p, std::uint64_t alpha,
                                    std::uint64_t q, std::uint64_t k) {
    TermBreakdown t;
    t.p = p;
    t.alpha = alpha;
    t.v_alpha = arith::valuation(alpha + 1, q);
    t.order = arith::order_data(p, q, k);
    if (t.order->omegak == 1) {
        // p^k == 1 (mod q)
        t.category = TermCategory::SUM_A;
        t.contribution = t.v_alpha;
    } else if ((alpha + 1) % t.order->omegak == 0) {
        t.category = TermCategory::SUM_B;
        t.v_k = arith::valuation(k, q);
        t.v_phi = cyclo::val_q_phi(p, q);
        t.contribution = t.v_alpha + t.v_k + t.v_phi;
    } else {
        t.category = TermCategory::ZERO;
        t.contribution = 0;
    }
    return t;
}

TermBreakdown unit_q_term(std::uint64_t q, std::uint64_t alpha) {
    // sigma_k(q^nu) == 1 (mod q), so the q-part never contributes.
    TermBreakdown t;
    t.p = q;
    t.alpha = alpha;
    t.category = TermCategory::UNIT_Q;
    t.v_alpha = arith::valuation(alpha + 1, q);
    t.contribution = 0;
    return t;
}

}  // namespace

std::string_view category_name(TermCategory c) {
    switch (c) {
        case TermCategory::UNIT_Q: return "UNIT_Q";
        case TermCategory::SUM_A: return "SUM_A";
        case TermCategory::SUM_B: return "SUM_B";
        case TermCategory::ZERO: return "ZERO";
    }
    return "?";
}

Decomposition decompose(std::uint64_t n, std::uint64_t q, std::uint64_t k) {
    if (n < 2) throw std::invalid_argument("decompose: n must be >= 2");
    require_odd_prime(q, "decompose");
    require_k(k, "decompose");
    Decomposition d;
    for (const auto& pp : arith::factorize(n).pairs) {
        if (pp.prime == q) {
            d.nu = pp.exponent;
        } else if (arith::mod_pow(pp.prime, k, q) == 1) {
            d.a.pairs.push_back(pp);
            d.a.value *= pow_u64(pp.prime, pp.exponent);
        } else {
            d.b.pairs.push_back(pp);
            d.b.value *= pow_u64(pp.prime, pp.exponent);
        }
    }
    return d;
}

TermBreakdown prime_power_term(std::uint64_t p, std::uint64_t alpha,
                               std::uint64_t q, std::uint64_t k) {
    if (!arith::is_prime(p))
        throw std::invalid_argument("prime_power_term: p must be prime");
    if (alpha == 0) throw std::invalid_argument("prime_power_term: alpha must be >= 1");
    require_odd_prime(q, "prime_power_term");
    require_k(k, "prime_power_term");
    return p == q ? unit_q_term(q, alpha) : classify_coprime_term(p, alpha, q, k);
}

ValuationBreakdown sigma_valuation(const arith::Factorization& f,
                                   std::uint64_t q, std::uint64_t k) {
    if (f.value < 2) throw std::invalid_argument("sigma_valuation: n must be >= 2");
    require_odd_prime(q, "sigma_valuation");
    require_k(k, "sigma_valuation");
    ValuationBreakdown b;
    b.n = f.value;
    b.q = q;
    b.k = k;
    b.terms.reserve(f.pairs.size());
    for (const auto& pp : f.pairs) {
        const TermBreakdown t = pp.prime == q
            ? unit_q_term(q, pp.exponent)
            : classify_coprime_term(pp.prime, pp.exponent, q, k);
        if (t.category == TermCategory::SUM_A) b.sum_a += t.contribution;
        if (t.category == TermCategory::SUM_B) b.sum_b += t.contribution;
        b.terms.push_back(t);
    }
    b.total = b.sum_a + b.sum_b;
    return b;
}

ValuationBreakdown sigma_valuation(std::uint64_t n, std::uint64_t q, std::uint64_t k) {
    if (n < 2) throw std::invalid_argument("sigma_valuation: n must be >= 2");
    return sigma_valuation(arith::factorize(n), q, k);
}

ValuationBreakdown sigma_valuation_q2(const arith::Factorization& f, std::uint64_t k) {
    if (f.value < 2) throw std::invalid_argument("sigma_valuation_q2: n must be >= 2");
    require_k(k, "sigma_valuation_q2");
    if (k > std::numeric_limits<unsigned long>::max())
        throw std::overflow_error("sigma_valuation_q2: k too large");
    ValuationBreakdown b;
    b.n = f.value;
    b.q = 2;
    b.k = k;
    b.terms.reserve(f.pairs.size());
    for (const auto& pp : f.pairs) {
        TermBreakdown t;
        t.p = pp.prime;
        t.alpha = pp.exponent;
        t.v_alpha = arith::valuation(pp.exponent + 1, 2);
        if (pp.prime == 2) {
            t.category = TermCategory::UNIT_Q;
        } else if ((pp.exponent + 1) % 2 == 0) {
            // v_2(alpha+1) + v_2(p^k + 1) - 1; the minus one rides in v_phi.
            t.category = TermCategory::SUM_B;
            BigNat power;
            mpz_ui_pow_ui(power.get_mpz_t(), pp.prime, static_cast<unsigned long>(k));
            power += 1;
            std::uint64_t v2 = 0;
            while (mpz_divisible_ui_p(power.get_mpz_t(), 2)) {
                mpz_divexact_ui(power.get_mpz_t(), power.get_mpz_t(), 2);
                ++v2;
            }
            t.v_phi = v2 - 1;  // p odd makes p^k + 1 even, so v2 >= 1
            t.contribution = t.v_alpha + t.v_phi;
            b.sum_b += t.contribution;
        } else {
            t.category = TermCategory::ZERO;
        }
        b.terms.push_back(t);
    }
    b.total = b.sum_b;
    return b;
}

ValuationBreakdown sigma_valuation_q2(std::uint64_t n, std::uint64_t k) {
    if (n < 2) throw std::invalid_argument("sigma_valuation_q2: n must be >= 2");
    return sigma_valuation_q2(arith::factorize(n), k);
}

MqkValues m_qk(std::uint64_t q, std::uint64_t k) {
    require_odd_prime(q, "m_qk");
    require_k(k, "m_qk");
    MqkValues m;
    for (std::uint64_t r = 2; r <= q - 1; ++r) {
        if (arith::mod_pow(r, k, q) == 1) continue;
        const std::uint64_t phi = arith::totient(arith::mult_order(r, q));
        m.safe = std::max(m.safe, phi);
        if (arith::is_prime(r)) m.paper = std::max(m.paper, phi);
    }
    return m;
}

std::uint64_t zhao_bound(std::uint64_t n, std::uint64_t q, std::uint64_t k) {
    if (n < 2) throw std::invalid_argument("zhao_bound: n must be >= 2");
    if (!arith::is_prime(q)) throw std::invalid_argument("zhao_bound: q must be prime");
    require_k(k, "zhao_bound");
    if (static_cast<double>(k) * std::log2(static_cast<double>(n)) > 1e9)
        throw std::overflow_error("zhao_bound: n^k too large to materialize");
    BigNat target;
    mpz_ui_pow_ui(target.get_mpz_t(), n, static_cast<unsigned long>(k));
    BigNat power = 1;
    std::uint64_t t = 0;
    while (power < target) {
        power *= q;
        ++t;
    }
    return t;
}

BoundReport corollary_bound(std::uint64_t n, std::uint64_t q, std::uint64_t k,
                            MVariant variant, const MqkValues& m) {
    if (n < 3) throw std::invalid_argument("corollary_bound: n must be >= 3");
    require_odd_prime(q, "corollary_bound");
    require_k(k, "corollary_bound");

    BoundReport r;
    r.n = n;
    r.q = q;
    r.k = k;
    r.m_qk = m.paper;
    r.m_qk_safe = m.safe;

    const double log_q = std::log(static_cast<double>(q));
    const double log_n = std::log(static_cast<double>(n));
    const double log_log_n = std::log(log_n);          // > 0 for n >= 3
    const double log_log_log_n = std::log(log_log_n);  // may be negative
    const double log_gamma = std::log(static_cast<double>(arith::arith_stats(n).gamma));

    const std::uint64_t m_used = variant == MVariant::paper ? m.paper : m.safe;
    const double k_part =
        arith::valuation(k, q) > 0 ? 1.385 * std::log(static_cast<double>(k)) : 0.0;

    r.term_kernel = static_cast<double>(m_used) * log_gamma / log_q;
    r.term_middle = (k_part + 1.066) * log_n / (log_q * log_log_n);
    r.term_tail = 4.0 * (log_log_log_n + 1.0) / log_q;
    r.corollary_total = r.term_kernel + r.term_middle + r.term_tail;
    r.corollary_weak = static_cast<double>(q - 2) * log_gamma / log_q
                       + r.term_middle + r.term_tail;
    r.zhao = zhao_bound(n, q, k);
    return r;
}

BoundReport corollary_bound(std::uint64_t n, std::uint64_t q, std::uint64_t k,
                            MVariant variant) {
    if (n < 3) throw std::invalid_argument("corollary_bound: n must be >= 3");
    require_odd_prime(q, "corollary_bound");
    require_k(k, "corollary_bound");
    return corollary_bound(n, q, k, variant, m_qk(q, k));
}

BoundComparison compare_bounds(std::uint64_t n, std::uint64_t q, std::uint64_t k,
                               MVariant variant) {
    const BoundReport r = corollary_bound(n, q, k, variant);
    BoundComparison c;
    c.actual = sigma_valuation(n, q, k).total;
    c.corollary = r.corollary_total;
    c.zhao = r.zhao;
    c.corollary_tighter = r.corollary_total < static_cast<double>(r.zhao);
    return c;
}

}  // namespace sigmaval::formula
