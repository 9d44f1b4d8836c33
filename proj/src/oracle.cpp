#include "sigmaval/oracle.hpp"

#include <limits>
#include <stdexcept>

namespace sigmaval::oracle {

namespace {

BigNat pow_big(std::uint64_t base, std::uint64_t exp) {
    if (exp > std::numeric_limits<unsigned long>::max())
        throw std::overflow_error("pow_big: exponent too large");
    BigNat r;
    mpz_ui_pow_ui(r.get_mpz_t(), base, static_cast<unsigned long>(exp));
    return r;
}

void require(bool ok, const char* message) {
    if (!ok) throw std::invalid_argument(message);
}

}  // namespace

BigNat sigma_k(const arith::Factorization& f, std::uint64_t k) {
    require(k >= 1, "sigma_k: k must be >= 1");
    BigNat acc = 1;
    for (const auto& pp : f.pairs) {
        // (p^{k(a+1)} - 1) / (p^k - 1), both exact.
        if (pp.exponent + 1 > std::numeric_limits<std::uint64_t>::max() / k)
            throw std::overflow_error("sigma_k: k * (alpha + 1) overflows");
        BigNat num = pow_big(pp.prime, k * (pp.exponent + 1)) - 1;
        BigNat den = pow_big(pp.prime, k) - 1;
        mpz_divexact(num.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        acc *= num;
    }
    return acc;
}

BigNat sigma_k(std::uint64_t n, std::uint64_t k) {
    require(n >= 1, "sigma_k: n must be >= 1");
    return sigma_k(arith::factorize(n), k);
}

BigNat sigma_k_divisor_sum(std::uint64_t n, std::uint64_t k) {
    require(n >= 1, "sigma_k_divisor_sum: n must be >= 1");
    require(k >= 1, "sigma_k_divisor_sum: k must be >= 1");
    BigNat acc = 0;
    for (std::uint64_t d : arith::divisors(n)) acc += pow_big(d, k);
    return acc;
}

std::uint64_t big_valuation(const BigNat& value, std::uint64_t q) {
    require(sgn(value) > 0, "big_valuation: value must be positive");
    require(arith::is_prime(q), "big_valuation: q must be prime");
    BigNat rest = value;
    std::uint64_t v = 0;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), q)) {
        mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), q);
        ++v;
    }
    return v;
}

std::uint64_t oracle_valuation(std::uint64_t n, std::uint64_t k, std::uint64_t q) {
    require(arith::is_prime(q), "oracle_valuation: q must be prime");
    return big_valuation(sigma_k(n, k), q);
}

std::uint64_t lte(std::int64_t a, std::int64_t b, std::uint64_t m, std::uint64_t q) {
    if (!arith::is_prime(q) || q == 2)
        throw std::invalid_argument("lte: q must be an odd prime");
    if (a == b) throw std::invalid_argument("lte: a and b must differ");
    const auto qs = static_cast<std::int64_t>(q);
    if (a % qs == 0 || b % qs == 0)
        throw std::invalid_argument("lte: q must not divide a*b");
    // Unsigned subtraction avoids signed overflow on extreme a, b.
    const std::uint64_t diff = a > b
        ? static_cast<std::uint64_t>(a) - static_cast<std::uint64_t>(b)
        : static_cast<std::uint64_t>(b) - static_cast<std::uint64_t>(a);
    if (diff % q != 0) throw std::invalid_argument("lte: q must divide a - b");
    if (m == 0) throw std::invalid_argument("lte: m must be >= 1");
    return arith::valuation(diff, q) + arith::valuation(m, q);
}

}  // namespace sigmaval::oracle
