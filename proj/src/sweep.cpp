#include "sigmaval/sweep.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <stdexcept>
#include <tuple>

#include "sigmaval/oracle.hpp"

namespace sigmaval::sweep {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

void validate_grid(const Grid& g) {
    if (g.n_lo < 2) throw std::invalid_argument("grid: n range must start at >= 2");
    if (g.n_hi < g.n_lo) throw std::invalid_argument("grid: n range is empty");
    if (g.qs.empty()) throw std::invalid_argument("grid: q set is empty");
    if (g.ks.empty()) throw std::invalid_argument("grid: k set is empty");
    for (std::uint64_t q : g.qs)
        if (!arith::is_prime(q))
            throw std::invalid_argument("grid: every q must be prime");
    for (std::uint64_t k : g.ks)
        if (k == 0) throw std::invalid_argument("grid: every k must be >= 1");
}

int effective_jobs(int jobs) { return jobs > 0 ? jobs : omp_get_max_threads(); }

// Per-n scratch; slots are indexed by n so aggregation order does not
// depend on the thread schedule.
struct Slot {
    std::uint64_t checked = 0;
    std::uint64_t mismatches = 0;
    std::uint64_t zhao_violations = 0;
    std::uint64_t corollary_safe = 0;
    std::uint64_t corollary_paper = 0;
    std::vector<Offender> offenders;
};

}  // namespace

std::uint64_t Grid::tuples() const {
    return (n_hi - n_lo + 1) * qs.size() * ks.size();
}

VerifyReport verify_sweep(const Grid& grid, int jobs, formula::MVariant variant,
                          std::uint64_t seed, std::uint64_t zhao_samples) {
    validate_grid(grid);
    const std::uint64_t count = grid.n_hi - grid.n_lo + 1;
    std::vector<Slot> slots(count);

    // M_{q,k} depends only on (q, k); hoist it out of the n loop.
    std::vector<std::vector<formula::MqkValues>> mcache(grid.qs.size());
    for (std::size_t qi = 0; qi < grid.qs.size(); ++qi) {
        mcache[qi].resize(grid.ks.size());
        if (grid.qs[qi] == 2) continue;
        for (std::size_t ki = 0; ki < grid.ks.size(); ++ki)
            mcache[qi][ki] = formula::m_qk(grid.qs[qi], grid.ks[ki]);
    }

    const bool selected_safe = variant == formula::MVariant::safe;

#pragma omp parallel for schedule(dynamic, 16) num_threads(effective_jobs(jobs))
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(count); ++i) {
        const std::uint64_t n = grid.n_lo + static_cast<std::uint64_t>(i);
        Slot& slot = slots[static_cast<std::size_t>(i)];
        const arith::Factorization f = arith::factorize(n);
        std::uint64_t gamma = 1;
        for (const auto& pp : f.pairs) gamma *= pp.prime;

        for (std::size_t ki = 0; ki < grid.ks.size(); ++ki) {
            const std::uint64_t k = grid.ks[ki];
            const BigNat sigma = oracle::sigma_k(f, k);
            for (std::size_t qi = 0; qi < grid.qs.size(); ++qi) {
                const std::uint64_t q = grid.qs[qi];
                const std::uint64_t total =
                    q == 2 ? formula::sigma_valuation_q2(f, k).total
                           : formula::sigma_valuation(f, q, k).total;
                const std::uint64_t oracle_v = oracle::big_valuation(sigma, q);
                ++slot.checked;
                if (total != oracle_v) {
                    ++slot.mismatches;
                    slot.offenders.push_back(
                        {"mismatch", n, q, k, total, oracle_v, 0.0});
                }

                std::uint64_t zhao = 0;
                if (q != 2 && n >= 3) {
                    const formula::BoundReport rep =
                        formula::corollary_bound(n, q, k, variant, mcache[qi][ki]);
                    zhao = rep.zhao;
                    const std::uint64_t m_other = selected_safe
                        ? mcache[qi][ki].paper : mcache[qi][ki].safe;
                    const double other_total = rep.term_middle + rep.term_tail
                        + static_cast<double>(m_other)
                              * std::log(static_cast<double>(gamma))
                              / std::log(static_cast<double>(q));
                    const bool viol_sel = !(static_cast<double>(oracle_v)
                                            < rep.corollary_total + formula::bound_slack);
                    const bool viol_other = !(static_cast<double>(oracle_v)
                                              < other_total + formula::bound_slack);
                    if (selected_safe) {
                        slot.corollary_safe += viol_sel;
                        slot.corollary_paper += viol_other;
                    } else {
                        slot.corollary_paper += viol_sel;
                        slot.corollary_safe += viol_other;
                    }
                    if (viol_sel)
                        slot.offenders.push_back({"corollary", n, q, k, total,
                                                  oracle_v, rep.corollary_total});
                } else {
                    zhao = formula::zhao_bound(n, q, k);
                }
                if (oracle_v > zhao) {
                    ++slot.zhao_violations;
                    slot.offenders.push_back({"zhao", n, q, k, total, oracle_v,
                                              static_cast<double>(zhao)});
                }
            }
        }
    }

    VerifyReport report;
    report.variant = variant;
    for (const Slot& s : slots) {
        report.checked += s.checked;
        report.mismatches += s.mismatches;
        report.zhao_violations += s.zhao_violations;
        report.corollary_violations_safe += s.corollary_safe;
        report.corollary_violations_paper += s.corollary_paper;
        report.offenders.insert(report.offenders.end(), s.offenders.begin(),
                                s.offenders.end());
    }
    report.corollary_violations = selected_safe ? report.corollary_violations_safe
                                                : report.corollary_violations_paper;

    // Spot-check the ceiling bound's defining inequality on random tuples
    // with independently recomputed big-integer powers.
    std::mt19937_64 rng(seed);
    for (std::uint64_t s = 0; s < zhao_samples; ++s) {
        const std::uint64_t n = grid.n_lo + rng() % count;
        const std::uint64_t q = grid.qs[rng() % grid.qs.size()];
        const std::uint64_t k = grid.ks[rng() % grid.ks.size()];
        const std::uint64_t t = formula::zhao_bound(n, q, k);
        BigNat target, lower, upper;
        mpz_ui_pow_ui(target.get_mpz_t(), n, static_cast<unsigned long>(k));
        mpz_ui_pow_ui(upper.get_mpz_t(), q, static_cast<unsigned long>(t));
        const bool covers = upper >= target;
        bool least = true;
        if (t > 0) {
            mpz_ui_pow_ui(lower.get_mpz_t(), q, static_cast<unsigned long>(t - 1));
            least = lower < target;
        }
        ++report.zhao_spot_checked;
        if (!covers || !least) {
            ++report.zhao_spot_failures;
            report.offenders.push_back({"zhao_postcondition", n, q, k, t, 0,
                                        static_cast<double>(t)});
        }
    }

    std::sort(report.offenders.begin(), report.offenders.end(),
              [](const Offender& a, const Offender& b) {
                  return std::tie(a.n, a.q, a.k, a.kind) <
                         std::tie(b.n, b.q, b.k, b.kind);
              });
    return report;
}

BenchReport bench_sweep(const Grid& grid, int jobs) {
    validate_grid(grid);
    const std::uint64_t count = grid.n_hi - grid.n_lo + 1;
    const int threads = effective_jobs(jobs);

    BenchReport report;
    report.tuples = grid.tuples();
    report.jobs = threads;

    // Formula path.  The accumulated total is kept so the work cannot be
    // optimized away; it is discarded afterwards.
    std::vector<std::uint64_t> formula_acc(count, 0);
    auto start = Clock::now();
#pragma omp parallel for schedule(dynamic, 16) num_threads(threads)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(count); ++i) {
        const std::uint64_t n = grid.n_lo + static_cast<std::uint64_t>(i);
        const arith::Factorization f = arith::factorize(n);
        std::uint64_t acc = 0;
        for (std::uint64_t k : grid.ks)
            for (std::uint64_t q : grid.qs)
                acc += q == 2 ? formula::sigma_valuation_q2(f, k).total
                              : formula::sigma_valuation(f, q, k).total;
        formula_acc[static_cast<std::size_t>(i)] = acc;
    }
    report.formula_seconds = seconds_since(start);

    // Reference path: materialize sigma_k(n) and divide.
    std::vector<std::uint64_t> oracle_acc(count, 0);
    std::vector<std::uint64_t> digits(count, 0);
    start = Clock::now();
#pragma omp parallel for schedule(dynamic, 16) num_threads(threads)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(count); ++i) {
        const std::uint64_t n = grid.n_lo + static_cast<std::uint64_t>(i);
        const arith::Factorization f = arith::factorize(n);
        std::uint64_t acc = 0;
        std::uint64_t widest = 0;
        for (std::uint64_t k : grid.ks) {
            const BigNat sigma = oracle::sigma_k(f, k);
            widest = std::max<std::uint64_t>(
                widest, mpz_sizeinbase(sigma.get_mpz_t(), 10));
            for (std::uint64_t q : grid.qs) acc += oracle::big_valuation(sigma, q);
        }
        oracle_acc[static_cast<std::size_t>(i)] = acc;
        digits[static_cast<std::size_t>(i)] = widest;
    }
    report.oracle_seconds = seconds_since(start);

    std::uint64_t formula_sum = 0, oracle_sum = 0;
    for (std::size_t i = 0; i < count; ++i) {
        formula_sum += formula_acc[i];
        oracle_sum += oracle_acc[i];
        report.max_sigma_digits = std::max(report.max_sigma_digits, digits[i]);
    }
    if (formula_sum != oracle_sum)
        throw std::runtime_error("bench: formula and reference disagree");
    return report;
}

}  // namespace sigmaval::sweep
