#include "sigmaval/arith.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace sigmaval::arith {

namespace {

constexpr std::uint64_t trial_division_bound = 1'000'000;

const std::vector<std::uint32_t>& small_primes() {
    static const std::vector<std::uint32_t> primes = [] {
        std::vector<bool> composite(trial_division_bound + 1, false);
        std::vector<std::uint32_t> out;
        for (std::uint64_t i = 2; i <= trial_division_bound; ++i) {
            if (composite[i]) continue;
            out.push_back(static_cast<std::uint32_t>(i));
            for (std::uint64_t j = i * i; j <= trial_division_bound; j += i)
                composite[j] = true;
        }
        return out;
    }();
    return primes;
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

// One Miller-Rabin round; n odd, n > 2, d * 2^r = n - 1 with d odd.
bool witness_passes(std::uint64_t a, std::uint64_t n, std::uint64_t d, int r) {
    a %= n;
    if (a == 0) return true;
    std::uint64_t x = mod_pow(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int i = 1; i < r; ++i) {
        x = mul_mod(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

std::uint64_t pollard_rho(std::uint64_t n) {
    // Brent's cycle variant; n is odd, composite, and has no factor
    // below the trial division bound.
    for (std::uint64_t c = 1;; ++c) {
        auto step = [&](std::uint64_t x) { return (mul_mod(x, x, n) + c) % n; };
        std::uint64_t x = 2, y = 2, d = 1;
        std::uint64_t power = 1, lam = 1;
        while (d == 1) {
            if (power == lam) {
                x = y;
                power *= 2;
                lam = 0;
            }
            y = step(y);
            ++lam;
            std::uint64_t diff = x > y ? x - y : y - x;
            if (diff == 0) break;  // cycle without factor, retry with new c
            d = std::gcd(diff, n);
        }
        if (d != 1 && d != n) return d;
    }
}

void factor_into(std::uint64_t n, std::vector<PrimePower>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        out.push_back({n, 1});
        return;
    }
    std::uint64_t d = pollard_rho(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

void require_prime(std::uint64_t q, const char* what) {
    if (!is_prime(q)) throw std::invalid_argument(std::string(what) + " must be prime");
}

}  // namespace

std::uint64_t valuation(std::uint64_t n, std::uint64_t p) {
    if (n == 0) throw std::invalid_argument("valuation: n must be nonzero");
    require_prime(p, "valuation: p");
    std::uint64_t v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t modulus) {
    if (modulus < 2) throw std::invalid_argument("mod_pow: modulus must be >= 2");
    std::uint64_t result = 1;
    base %= modulus;
    while (exp > 0) {
        if (exp & 1) result = mul_mod(result, base, modulus);
        base = mul_mod(base, base, modulus);
        exp >>= 1;
    }
    return result;
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0) return n == p;
    }
    if (n < 41 * 41) return true;
    std::uint64_t d = n - 1;
    int r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    // Sinclair's witness set, deterministic for the full 64-bit range.
    for (std::uint64_t a : {2ULL, 325ULL, 9375ULL, 28178ULL, 450775ULL,
                            9780504ULL, 1795265022ULL}) {
        if (!witness_passes(a, n, d, r)) return false;
    }
    return true;
}

Factorization factorize(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("factorize: n must be >= 1");
    Factorization f;
    f.value = n;
    std::uint64_t rest = n;
    for (std::uint32_t p : small_primes()) {
        if (static_cast<std::uint64_t>(p) * p > rest) break;
        if (rest % p != 0) continue;
        std::uint64_t e = 0;
        while (rest % p == 0) {
            rest /= p;
            ++e;
        }
        f.pairs.push_back({p, e});
    }
    if (rest > 1) {
        if (is_prime(rest)) {
            f.pairs.push_back({rest, 1});
        } else {
            std::vector<PrimePower> tail;
            factor_into(rest, tail);
            std::sort(tail.begin(), tail.end(),
                      [](const PrimePower& a, const PrimePower& b) { return a.prime < b.prime; });
            for (const auto& pp : tail) {
                if (!f.pairs.empty() && f.pairs.back().prime == pp.prime)
                    f.pairs.back().exponent += pp.exponent;
                else
                    f.pairs.push_back(pp);
            }
        }
    }
    return f;
}

std::uint64_t mult_order(std::uint64_t p, std::uint64_t q) {
    require_prime(q, "mult_order: q");
    std::uint64_t r = p % q;
    if (r == 0) throw std::invalid_argument("mult_order: p must be coprime to q");
    std::uint64_t order = q - 1;
    for (const auto& pp : factorize(q - 1).pairs) {
        for (std::uint64_t i = 0; i < pp.exponent; ++i) {
            if (order % pp.prime == 0 && mod_pow(r, order / pp.prime, q) == 1)
                order /= pp.prime;
            else
                break;
        }
    }
    return order;
}

OrderData order_data(std::uint64_t p, std::uint64_t q, std::uint64_t k) {
    require_prime(p, "order_data: p");
    require_prime(q, "order_data: q");
    if (q == 2) throw std::invalid_argument("order_data: q must be odd");
    if (p == q) throw std::invalid_argument("order_data: p must differ from q");
    if (k == 0) throw std::invalid_argument("order_data: k must be >= 1");
    OrderData od;
    od.p = p;
    od.q = q;
    od.k = k;
    od.omega1 = mult_order(p, q);
    od.omegak = mult_order(mod_pow(p, k, q), q);
    od.dk = std::gcd(k, od.omega1);
    return od;
}

std::uint64_t totient(std::uint64_t m) {
    if (m == 0) throw std::invalid_argument("totient: m must be >= 1");
    std::uint64_t t = m;
    for (const auto& pp : factorize(m).pairs) {
        t -= t / pp.prime;
    }
    return t;
}

int mobius(std::uint64_t m) {
    if (m == 0) throw std::invalid_argument("mobius: m must be >= 1");
    const Factorization f = factorize(m);
    for (const auto& pp : f.pairs)
        if (pp.exponent > 1) return 0;
    return f.pairs.size() % 2 == 0 ? 1 : -1;
}

ArithStats arith_stats(std::uint64_t n) {
    if (n < 2) throw std::invalid_argument("arith_stats: n must be >= 2");
    ArithStats s{1, 0, 1};
    for (const auto& pp : factorize(n).pairs) {
        s.tau *= pp.exponent + 1;
        s.omega += 1;
        s.gamma *= pp.prime;
    }
    return s;
}

std::vector<std::uint64_t> divisors(std::uint64_t m) {
    if (m == 0) throw std::invalid_argument("divisors: m must be >= 1");
    std::vector<std::uint64_t> out{1};
    for (const auto& pp : factorize(m).pairs) {
        const std::size_t base = out.size();
        std::uint64_t power = 1;
        for (std::uint64_t e = 0; e < pp.exponent; ++e) {
            power *= pp.prime;
            for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * power);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace sigmaval::arith
