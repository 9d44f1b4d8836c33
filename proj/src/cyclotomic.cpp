#include "sigmaval/cyclotomic.hpp"

#include <cmath>
#include <stdexcept>

#include "sigmaval/arith.hpp"

namespace sigmaval::cyclo {

namespace {

BigNat pow_minus_one(std::uint64_t x, std::uint64_t d) {
    // ~1 Gbit cap: huge q makes p^{ord_q(p)} unrepresentable, fail cleanly
    if (static_cast<double>(d) * std::log2(static_cast<double>(x)) > 1e9)
        throw std::overflow_error("cyclo: power too large to materialize");
    BigNat r;
    mpz_ui_pow_ui(r.get_mpz_t(), x, static_cast<unsigned long>(d));
    return r - 1;
}

}  // namespace

BigNat eval(std::uint64_t m, std::uint64_t x) {
    if (m == 0) throw std::invalid_argument("cyclo::eval: m must be >= 1");
    if (x < 2) throw std::invalid_argument("cyclo::eval: x must be >= 2");
    BigNat num = 1, den = 1;
    for (std::uint64_t d : arith::divisors(m)) {
        switch (arith::mobius(m / d)) {
            case 1: num *= pow_minus_one(x, d); break;
            case -1: den *= pow_minus_one(x, d); break;
            default: break;
        }
    }
    mpz_divexact(num.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return num;
}

Bounds bounds(std::uint64_t m, std::uint64_t n, std::uint64_t depth) {
    if (m == 0) throw std::invalid_argument("cyclo::bounds: m must be >= 1");
    if (n < 2) throw std::invalid_argument("cyclo::bounds: n must be >= 2");
    if (depth == 0) throw std::invalid_argument("cyclo::bounds: depth must be >= 1");

    const double inv = 1.0 / static_cast<double>(n);
    double truncated = 1.0;
    double term = 1.0;
    for (std::uint64_t j = 0; j < depth; ++j) {
        term *= inv;
        if (term == 0.0) break;  // tail underflowed, product converged
        truncated *= 1.0 - term;
    }
    // Discarded tail is at least 1 - 2 n^{-(depth+1)}, so one extra
    // pessimistic factor keeps the lower bound rigorous at any depth.
    const double tail_floor = 1.0 - 2.0 * std::pow(inv, static_cast<double>(depth) + 1.0);
    const double scale = std::pow(static_cast<double>(n),
                                  static_cast<double>(arith::totient(m)));
    return Bounds{m, n, truncated * tail_floor * scale, scale / truncated, depth};
}

DivisibilityOrder divides_iff_order(std::uint64_t q, std::uint64_t m, std::uint64_t n) {
    if (!arith::is_prime(q))
        throw std::invalid_argument("divides_iff_order: q must be prime");
    if (m == 0 || m % q == 0)
        throw std::invalid_argument("divides_iff_order: m must be >= 1 and coprime to q");
    if (n < 2) throw std::invalid_argument("divides_iff_order: n must be >= 2");
    if (n % q == 0)
        throw std::invalid_argument("divides_iff_order: n must be coprime to q");
    const BigNat phi = eval(m, n);
    return DivisibilityOrder{
        mpz_fdiv_ui(phi.get_mpz_t(), q) == 0,
        m == arith::mult_order(n, q),
    };
}

std::uint64_t val_q_phi(std::uint64_t p, std::uint64_t q) {
    if (!arith::is_prime(p)) throw std::invalid_argument("val_q_phi: p must be prime");
    if (!arith::is_prime(q) || q == 2)
        throw std::invalid_argument("val_q_phi: q must be an odd prime");
    if (p == q) throw std::invalid_argument("val_q_phi: p must differ from q");
    const std::uint64_t w = arith::mult_order(p, q);
    BigNat power = pow_minus_one(p, w);  // p^w - 1, divisible by q by choice of w
    std::uint64_t v = 0;
    while (mpz_divisible_ui_p(power.get_mpz_t(), q)) {
        mpz_divexact_ui(power.get_mpz_t(), power.get_mpz_t(), q);
        ++v;
    }
    return v;
}

}  // namespace sigmaval::cyclo
