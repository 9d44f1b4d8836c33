#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sigmaval/valuation.hpp"

// Grid drivers.  The verification kernel runs the formula against the
// big-integer reference over an (n, q, k) grid, OpenMP-parallel over n;
// results land in per-n slots, so the aggregated report is identical for
// any thread count.  The bench kernel times the two paths separately.

namespace sigmaval::sweep {

struct Grid {
    std::uint64_t n_lo = 2;
    std::uint64_t n_hi = 2;
    std::vector<std::uint64_t> qs;
    std::vector<std::uint64_t> ks;

    std::uint64_t tuples() const;
};

struct Offender {
    std::string kind;  // "mismatch" | "zhao" | "corollary" | "zhao_postcondition"
    std::uint64_t n = 0;
    std::uint64_t q = 0;
    std::uint64_t k = 0;
    std::uint64_t formula = 0;
    std::uint64_t oracle = 0;
    double bound = 0;
};

struct VerifyReport {
    std::uint64_t checked = 0;
    std::uint64_t mismatches = 0;
    std::uint64_t zhao_violations = 0;
    std::uint64_t corollary_violations = 0;        // selected M variant
    std::uint64_t corollary_violations_safe = 0;
    std::uint64_t corollary_violations_paper = 0;
    std::uint64_t zhao_spot_checked = 0;
    std::uint64_t zhao_spot_failures = 0;
    formula::MVariant variant = formula::MVariant::safe;
    std::vector<Offender> offenders;

    bool passed() const { return mismatches == 0 && zhao_violations == 0; }
};

struct BenchReport {
    std::uint64_t tuples = 0;
    int jobs = 0;
    double formula_seconds = 0;
    double oracle_seconds = 0;
    std::uint64_t max_sigma_digits = 0;  // largest sigma_k(n) the reference built
};

// For every tuple: formula total vs oracle valuation, the ceiling bound,
// and (odd q, n >= 3) the corollary bound under both M variants.  Offenders
// are listed in (n, q, k) order regardless of thread count.  `zhao_samples`
// random tuples additionally get the bound's defining inequality
// q^t >= n^k > q^{t-1} re-checked with fresh big-integer powers.
// jobs <= 0 means use all hardware threads.
VerifyReport verify_sweep(const Grid& grid, int jobs,
                          formula::MVariant variant = formula::MVariant::safe,
                          std::uint64_t seed = 0,
                          std::uint64_t zhao_samples = 1000);

// Wall time of the formula path vs the big-integer reference path over the
// same grid, same thread count for both.
BenchReport bench_sweep(const Grid& grid, int jobs);

}  // namespace sigmaval::sweep
