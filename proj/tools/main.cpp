#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "sigmaval/arith.hpp"
#include "sigmaval/cyclotomic.hpp"
#include "sigmaval/oracle.hpp"
#include "sigmaval/sweep.hpp"
#include "sigmaval/valuation.hpp"

namespace {

using nlohmann::ordered_json;
using namespace sigmaval;

enum class Format { plain, json, csv };

Format to_format(const std::string& s) {
    if (s == "json") return Format::json;
    if (s == "csv") return Format::csv;
    return Format::plain;
}

// Floats are emitted with 12 significant digits everywhere; rounding the
// double itself keeps JSON parse/re-serialize byte-identical.
double round12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return std::strtod(buf, nullptr);
}

std::string fmt12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::uint64_t parse_u64(std::string_view s) {
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec == std::errc::result_out_of_range)
        throw std::invalid_argument("value out of 64-bit range: " + std::string(s));
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw std::invalid_argument("not an unsigned integer: " + std::string(s));
    return value;
}

// "a..b" (inclusive) or a single value.
std::pair<std::uint64_t, std::uint64_t> parse_range(const std::string& s) {
    const auto dots = s.find("..");
    if (dots == std::string::npos) {
        const std::uint64_t v = parse_u64(s);
        return {v, v};
    }
    const std::uint64_t lo = parse_u64(std::string_view(s).substr(0, dots));
    const std::uint64_t hi = parse_u64(std::string_view(s).substr(dots + 2));
    if (hi < lo) throw std::invalid_argument("empty range: " + s);
    return {lo, hi};
}

// Comma-separated values and/or ranges; result sorted and deduplicated.
std::vector<std::uint64_t> parse_set(const std::string& s) {
    std::vector<std::uint64_t> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        const std::size_t comma = s.find(',', start);
        const std::string piece =
            s.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        if (piece.empty()) throw std::invalid_argument("empty list entry in: " + s);
        const auto [lo, hi] = parse_range(piece);
        if (hi - lo > 1'000'000)
            throw std::invalid_argument("range too wide for a discrete set: " + piece);
        for (std::uint64_t v = lo; v <= hi; ++v) out.push_back(v);
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    if (out.empty()) throw std::invalid_argument("empty set: " + s);
    return out;
}

formula::MVariant to_variant(const std::string& s) {
    return s == "paper" ? formula::MVariant::paper : formula::MVariant::safe;
}

const char* variant_name(formula::MVariant v) {
    return v == formula::MVariant::paper ? "paper" : "safe";
}

void emit(const ordered_json& j) { std::cout << j.dump(2) << "\n"; }

ordered_json term_json(const formula::TermBreakdown& t) {
    return ordered_json{{"p", t.p},
                        {"alpha", t.alpha},
                        {"category", formula::category_name(t.category)},
                        {"v_alpha", t.v_alpha},
                        {"v_k", t.v_k},
                        {"v_phi", t.v_phi},
                        {"contribution", t.contribution}};
}

int run_val(std::uint64_t n, std::uint64_t q, std::uint64_t k, Format format) {
    const formula::ValuationBreakdown b =
        q == 2 ? formula::sigma_valuation_q2(n, k) : formula::sigma_valuation(n, q, k);
    switch (format) {
        case Format::json: {
            ordered_json j;
            j["input"] = {{"n", n}, {"q", q}, {"k", k}};
            j["result"] = {{"total", b.total}, {"sum_a", b.sum_a}, {"sum_b", b.sum_b}};
            j["terms"] = ordered_json::array();
            for (const auto& t : b.terms) j["terms"].push_back(term_json(t));
            emit(j);
            break;
        }
        case Format::csv: {
            std::cout << "n,q,k,p,alpha,category,v_alpha,v_k,v_phi,contribution,total\n";
            for (const auto& t : b.terms)
                std::cout << n << ',' << q << ',' << k << ',' << t.p << ',' << t.alpha
                          << ',' << formula::category_name(t.category) << ','
                          << t.v_alpha << ',' << t.v_k << ',' << t.v_phi << ','
                          << t.contribution << ',' << b.total << "\n";
            break;
        }
        case Format::plain: {
            std::cout << "v_" << q << "(sigma_" << k << "(" << n << ")) = " << b.total
                      << "\n";
            std::cout << "sum_a = " << b.sum_a << "  sum_b = " << b.sum_b << "\n";
            for (const auto& t : b.terms) {
                std::cout << "  p=" << t.p << " alpha=" << t.alpha << " category="
                          << formula::category_name(t.category) << " v_alpha=" << t.v_alpha
                          << " v_k=" << t.v_k << " v_phi=" << t.v_phi
                          << " contribution=" << t.contribution << "\n";
            }
            break;
        }
    }
    return 0;
}

int run_verify(const sweep::Grid& grid, int jobs, formula::MVariant variant,
               std::uint64_t seed, bool inject_mismatch, Format format) {
    sweep::VerifyReport report = sweep::verify_sweep(grid, jobs, variant, seed);
    if (inject_mismatch) {
        // Test hook: force the failure exit path.
        ++report.mismatches;
        report.offenders.push_back(
            {"mismatch", grid.n_lo, grid.qs.front(), grid.ks.front(), 1, 0, 0.0});
    }
    switch (format) {
        case Format::json: {
            ordered_json j;
            j["input"] = {{"n_lo", grid.n_lo},
                          {"n_hi", grid.n_hi},
                          {"q", grid.qs},
                          {"k", grid.ks},
                          {"m_variant", variant_name(variant)},
                          {"seed", seed}};
            j["result"] = {{"checked", report.checked},
                           {"mismatches", report.mismatches},
                           {"zhao_violations", report.zhao_violations},
                           {"corollary_violations", report.corollary_violations},
                           {"corollary_violations_safe", report.corollary_violations_safe},
                           {"corollary_violations_paper", report.corollary_violations_paper},
                           {"zhao_spot_checked", report.zhao_spot_checked},
                           {"zhao_spot_failures", report.zhao_spot_failures},
                           {"passed", report.passed()}};
            j["offenders"] = ordered_json::array();
            for (const auto& o : report.offenders)
                j["offenders"].push_back(ordered_json{{"kind", o.kind},
                                                      {"n", o.n},
                                                      {"q", o.q},
                                                      {"k", o.k},
                                                      {"formula", o.formula},
                                                      {"oracle", o.oracle},
                                                      {"bound", round12(o.bound)}});
            emit(j);
            break;
        }
        case Format::csv: {
            std::cout << "kind,n,q,k,formula,oracle,bound\n";
            for (const auto& o : report.offenders)
                std::cout << o.kind << ',' << o.n << ',' << o.q << ',' << o.k << ','
                          << o.formula << ',' << o.oracle << ',' << fmt12(o.bound)
                          << "\n";
            break;
        }
        case Format::plain: {
            std::cout << "checked = " << report.checked << "\n"
                      << "mismatches = " << report.mismatches << "\n"
                      << "zhao_violations = " << report.zhao_violations << "\n"
                      << "corollary_violations = " << report.corollary_violations
                      << " (variant=" << variant_name(variant) << ")\n"
                      << "corollary_violations_safe = "
                      << report.corollary_violations_safe << "\n"
                      << "corollary_violations_paper = "
                      << report.corollary_violations_paper << "\n"
                      << "zhao_spot_checked = " << report.zhao_spot_checked << "\n"
                      << "zhao_spot_failures = " << report.zhao_spot_failures << "\n";
            for (const auto& o : report.offenders)
                std::cout << "offender kind=" << o.kind << " n=" << o.n << " q=" << o.q
                          << " k=" << o.k << " formula=" << o.formula << " oracle="
                          << o.oracle << " bound=" << fmt12(o.bound) << "\n";
            std::cout << "result: " << (report.passed() ? "PASS" : "FAIL") << "\n";
            break;
        }
    }
    return report.passed() ? 0 : 1;
}

int run_bound(std::uint64_t n, std::uint64_t q, std::uint64_t k,
              formula::MVariant variant, Format format) {
    const formula::BoundReport r = formula::corollary_bound(n, q, k, variant);
    const std::uint64_t actual = formula::sigma_valuation(n, q, k).total;
    const bool tighter = r.corollary_total < static_cast<double>(r.zhao);
    switch (format) {
        case Format::json: {
            ordered_json j;
            j["input"] = {{"n", n}, {"q", q}, {"k", k}, {"m_variant", variant_name(variant)}};
            j["result"] = {{"actual", actual},
                           {"corollary_tighter", tighter},
                           {"tighter", tighter ? "corollary" : "zhao"}};
            j["bounds"] = {{"zhao", r.zhao},
                           {"m_qk", r.m_qk},
                           {"m_qk_safe", r.m_qk_safe},
                           {"term_kernel", round12(r.term_kernel)},
                           {"term_middle", round12(r.term_middle)},
                           {"term_tail", round12(r.term_tail)},
                           {"corollary_total", round12(r.corollary_total)},
                           {"corollary_weak", round12(r.corollary_weak)}};
            emit(j);
            break;
        }
        case Format::csv: {
            std::cout << "n,q,k,actual,zhao,m_qk,m_qk_safe,term_kernel,term_middle,"
                         "term_tail,corollary_total,corollary_weak,corollary_tighter\n";
            std::cout << n << ',' << q << ',' << k << ',' << actual << ',' << r.zhao
                      << ',' << r.m_qk << ',' << r.m_qk_safe << ','
                      << fmt12(r.term_kernel) << ',' << fmt12(r.term_middle) << ','
                      << fmt12(r.term_tail) << ',' << fmt12(r.corollary_total) << ','
                      << fmt12(r.corollary_weak) << ',' << (tighter ? "true" : "false")
                      << "\n";
            break;
        }
        case Format::plain: {
            std::cout << "n=" << n << " q=" << q << " k=" << k
                      << " m_variant=" << variant_name(variant) << "\n"
                      << "actual           = " << actual << "\n"
                      << "zhao             = " << r.zhao << "\n"
                      << "m_qk             = " << r.m_qk << "\n"
                      << "m_qk_safe        = " << r.m_qk_safe << "\n"
                      << "term_kernel      = " << fmt12(r.term_kernel) << "\n"
                      << "term_middle      = " << fmt12(r.term_middle) << "\n"
                      << "term_tail        = " << fmt12(r.term_tail) << "\n"
                      << "corollary_total  = " << fmt12(r.corollary_total) << "\n"
                      << "corollary_weak   = " << fmt12(r.corollary_weak) << "\n"
                      << "tighter          = " << (tighter ? "corollary" : "zhao")
                      << "\n";
            break;
        }
    }
    return 0;
}

int run_cyclo(std::uint64_t m, std::uint64_t x, std::uint64_t depth, Format format) {
    const BigNat value = cyclo::eval(m, x);
    const cyclo::Bounds b = cyclo::bounds(m, x, depth);
    const std::string decimal = value.get_str();
    switch (format) {
        case Format::json: {
            ordered_json j;
            j["input"] = {{"m", m}, {"x", x}, {"depth", depth}};
            j["result"] = {{"value", decimal},
                           {"lower", round12(b.lower)},
                           {"upper", round12(b.upper)}};
            emit(j);
            break;
        }
        case Format::csv:
            std::cout << "m,x,value,lower,upper,depth\n";
            std::cout << m << ',' << x << ',' << decimal << ',' << fmt12(b.lower) << ','
                      << fmt12(b.upper) << ',' << depth << "\n";
            break;
        case Format::plain:
            std::cout << "phi_" << m << "(" << x << ") = " << decimal << "\n"
                      << "bracket = [" << fmt12(b.lower) << ", " << fmt12(b.upper)
                      << "] (depth=" << depth << ")\n";
            break;
    }
    return 0;
}

int run_order(std::uint64_t p, std::uint64_t q, std::uint64_t k, Format format) {
    const arith::OrderData od = arith::order_data(p, q, k);
    switch (format) {
        case Format::json: {
            ordered_json j;
            j["input"] = {{"p", p}, {"q", q}, {"k", k}};
            j["result"] = {{"omega1", od.omega1}, {"omegak", od.omegak}, {"dk", od.dk}};
            emit(j);
            break;
        }
        case Format::csv:
            std::cout << "p,q,k,omega1,omegak,dk\n";
            std::cout << p << ',' << q << ',' << k << ',' << od.omega1 << ','
                      << od.omegak << ',' << od.dk << "\n";
            break;
        case Format::plain:
            std::cout << "(omega1, omegak, dk) = (" << od.omega1 << ", " << od.omegak
                      << ", " << od.dk << ")\n";
            break;
    }
    return 0;
}

int run_bench(const sweep::Grid& grid, int jobs, Format format) {
    sweep::BenchReport r;
    try {
        r = sweep::bench_sweep(grid, jobs);
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    const double speedup =
        r.formula_seconds > 0 ? r.oracle_seconds / r.formula_seconds : 0.0;
    switch (format) {
        case Format::json: {
            ordered_json j;
            j["input"] = {{"n_lo", grid.n_lo},
                          {"n_hi", grid.n_hi},
                          {"q", grid.qs},
                          {"k", grid.ks},
                          {"jobs", r.jobs}};
            j["result"] = {{"tuples", r.tuples},
                           {"formula_seconds", round12(r.formula_seconds)},
                           {"oracle_seconds", round12(r.oracle_seconds)},
                           {"speedup", round12(speedup)},
                           {"max_sigma_digits", r.max_sigma_digits}};
            emit(j);
            break;
        }
        case Format::csv:
            std::cout << "tuples,jobs,formula_seconds,oracle_seconds,speedup,"
                         "max_sigma_digits\n";
            std::cout << r.tuples << ',' << r.jobs << ',' << fmt12(r.formula_seconds)
                      << ',' << fmt12(r.oracle_seconds) << ',' << fmt12(speedup) << ','
                      << r.max_sigma_digits << "\n";
            break;
        case Format::plain:
            std::cout << "tuples            = " << r.tuples << "\n"
                      << "jobs              = " << r.jobs << "\n"
                      << "formula_seconds   = " << fmt12(r.formula_seconds) << "\n"
                      << "oracle_seconds    = " << fmt12(r.oracle_seconds) << "\n"
                      << "speedup           = " << fmt12(speedup) << "\n"
                      << "max_sigma_digits  = " << r.max_sigma_digits << "\n";
            break;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact q-adic valuation of sigma_k(n): closed formula, "
                 "big-integer oracle sweeps, and explicit bounds"};
    app.require_subcommand(1);

    std::string format_str = "plain";
    const auto add_format = [&format_str](CLI::App* sub) {
        sub->add_option("--format", format_str, "output format")
            ->check(CLI::IsMember({"plain", "json", "csv"}))
            ->capture_default_str();
    };

    // val
    auto* val = app.add_subcommand("val", "valuation of sigma_k(n) with breakdown");
    add_format(val);
    std::uint64_t val_n = 0, val_q = 0, val_k = 0;
    val->add_option("--n", val_n, "n >= 2")->required();
    val->add_option("--q", val_q, "prime q (2 uses the q=2 formula)")->required();
    val->add_option("--k", val_k, "k >= 1")->required();

    // verify
    auto* verify = app.add_subcommand("verify", "sweep a grid, formula vs oracle");
    add_format(verify);
    std::string verify_n, verify_q, verify_k;
    int verify_jobs = 0;
    std::string verify_variant = "safe";
    std::uint64_t verify_seed = 0;
    bool inject_mismatch = false;
    verify->add_option("--n", verify_n, "n range, e.g. 2..10000")->required();
    verify->add_option("--q", verify_q, "primes, e.g. 3,5,7 (2 allowed)")->required();
    verify->add_option("--k", verify_k, "k values, e.g. 1..5")->required();
    verify->add_option("--jobs", verify_jobs, "worker threads (0 = all)");
    verify->add_option("--m-variant", verify_variant, "M_{q,k} variant")
        ->check(CLI::IsMember({"paper", "safe"}))
        ->capture_default_str();
    verify->add_option("--seed", verify_seed, "seed for the bound spot check");
    verify->add_flag("--inject-mismatch", inject_mismatch)->group("");

    // bound
    auto* bound = app.add_subcommand("bound", "bound report for one (n, q, k)");
    add_format(bound);
    std::uint64_t bound_n = 0, bound_q = 0, bound_k = 0;
    std::string bound_variant = "safe";
    bound->add_option("--n", bound_n, "n >= 3")->required();
    bound->add_option("--q", bound_q, "odd prime q")->required();
    bound->add_option("--k", bound_k, "k >= 1")->required();
    bound->add_option("--m-variant", bound_variant, "M_{q,k} variant")
        ->check(CLI::IsMember({"paper", "safe"}))
        ->capture_default_str();

    // cyclo
    auto* cyc = app.add_subcommand("cyclo", "cyclotomic value phi_m(x) with bracket");
    add_format(cyc);
    std::uint64_t cyc_m = 0, cyc_x = 0, cyc_depth = cyclo::default_depth;
    cyc->add_option("--m", cyc_m, "index m >= 1")->required();
    cyc->add_option("--x", cyc_x, "argument x >= 2")->required();
    cyc->add_option("--depth", cyc_depth, "bracket truncation depth")
        ->capture_default_str();

    // order
    auto* ord = app.add_subcommand("order", "multiplicative order data for (p, q, k)");
    add_format(ord);
    std::uint64_t ord_p = 0, ord_q = 0, ord_k = 0;
    ord->add_option("--p", ord_p, "prime p != q")->required();
    ord->add_option("--q", ord_q, "odd prime q")->required();
    ord->add_option("--k", ord_k, "k >= 1")->required();

    // bench
    auto* bench = app.add_subcommand("bench", "time formula path vs oracle path");
    add_format(bench);
    std::string bench_n, bench_q, bench_k;
    int bench_jobs = 0;
    bench->add_option("--n", bench_n, "n range")->required();
    bench->add_option("--q", bench_q, "primes")->required();
    bench->add_option("--k", bench_k, "k values")->required();
    bench->add_option("--jobs", bench_jobs, "worker threads (0 = all)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    const Format format = to_format(format_str);
    try {
        if (val->parsed()) return run_val(val_n, val_q, val_k, format);
        if (verify->parsed()) {
            const auto [lo, hi] = parse_range(verify_n);
            const sweep::Grid grid{lo, hi, parse_set(verify_q), parse_set(verify_k)};
            return run_verify(grid, verify_jobs, to_variant(verify_variant),
                              verify_seed, inject_mismatch, format);
        }
        if (bound->parsed())
            return run_bound(bound_n, bound_q, bound_k, to_variant(bound_variant), format);
        if (cyc->parsed()) return run_cyclo(cyc_m, cyc_x, cyc_depth, format);
        if (ord->parsed()) return run_order(ord_p, ord_q, ord_k, format);
        if (bench->parsed()) {
            const auto [lo, hi] = parse_range(bench_n);
            const sweep::Grid grid{lo, hi, parse_set(bench_q), parse_set(bench_k)};
            return run_bench(grid, bench_jobs, format);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::overflow_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
