// Acceptance checks for the released solver. Each test case prints exactly
// one "criterion N: PASS/FAIL" line so the run log doubles as a report.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "ppide/banded.hpp"
#include "ppide/config.hpp"
#include "ppide/experiments.hpp"
#include "ppide/fft_ref.hpp"
#include "ppide/operators.hpp"
#include "ppide/pp_stepper.hpp"
#include "support/dense.hpp"
#include "support/quadrature.hpp"

using namespace ppide;
namespace ts = ppide::testsupport;

namespace {

void report(int id, bool ok, const std::string& detail) {
    std::printf("criterion %d: %s - %s\n", id, ok ? "PASS" : "FAIL",
                detail.c_str());
    std::fflush(stdout);
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::vector<double> smooth_seed(std::size_t n) {
    std::vector<double> c(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = (static_cast<double>(i) - 3.5) / 2.0;
        c[i] = std::exp(-t * t);
    }
    return c;
}

// Dense reference march: expm(T (s (sqrt_v/2) A^{-1} - comp I)) c0.
std::vector<double> exact_march(const BandedMatrix& a, const SchemeConfig& cfg,
                                double comp, double total_time,
                                const std::vector<double>& c0) {
    const double s = cfg.sign == RateSign::growth ? 1.0 : -1.0;
    ts::Dense g = ts::dense_inverse(ts::from_banded(a));
    for (auto& row : g) {
        for (auto& v : row) v *= s * 0.5 * cfg.sqrt_v;
    }
    if (comp != 0.0) {
        for (std::size_t i = 0; i < g.size(); ++i) g[i][i] -= comp;
    }
    for (auto& row : g) {
        for (auto& v : row) v *= total_time;
    }
    return ts::dense_matvec(ts::dense_expm(g), c0);
}

double march_error(const BandedMatrix& a, SchemeConfig cfg, double total_time,
                   double theta) {
    cfg.theta = theta;
    const auto n_steps = static_cast<std::size_t>(std::lround(total_time / theta));
    const std::vector<double> c0 = smooth_seed(a.size());
    const PpMarcher marcher(a, cfg, 0.0);
    const std::vector<double> got = marcher.march(c0, n_steps);
    const std::vector<double> ref = exact_march(a, cfg, 0.0, total_time, c0);
    return ts::vec_inf_diff(got, ref);
}

double observed_order(const std::vector<double>& thetas,
                      const std::vector<double>& errs) {
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < thetas.size(); ++i) {
        sum += std::log2(errs[i] / errs[i + 1]) /
               std::log2(thetas[i] / thetas[i + 1]);
    }
    return sum / static_cast<double>(thetas.size() - 1);
}

BandedMatrix tail_operator(double lambda, std::size_t n) {
    OperatorSpec spec;
    spec.side = JumpSide::positive;
    spec.p = 0;
    spec.nu = 1.0;
    spec.lambda = lambda;
    spec.n = n;
    spec.h = 10.0;
    return build_A_operator(spec);
}

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("ppide-acc-" + std::to_string(std::chrono::steady_clock::now()
                                                  .time_since_epoch()
                                                  .count()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path, ec);
    }
};

} // namespace

TEST_CASE("criterion 1: factored tail operators have the closed-form diagonal") {
    // (nu I -+ D1)^{p+1} built on one-sided three-point stencils must carry the
    // exactly constant diagonal (nu + 3/(2h))^{p+1} after the 1/(lambda p!)
    // scaling is removed.
    const std::size_t n = 64;
    const double h = 0.1;
    const double nu = 1.3;
    const double lambda = 0.45;

    double worst = 0.0;
    const BandedMatrix df = build_forward_d1(n, h);
    const BandedMatrix db = build_backward_d1(n, h);
    for (std::size_t i = 0; i < n; ++i) {
        worst = std::max(worst, std::abs(df.get(i, i) + 3.0 / (2.0 * h)));
        worst = std::max(worst, std::abs(db.get(i, i) - 3.0 / (2.0 * h)));
    }

    double factorial = 1.0;
    for (int p = 0; p <= 3; ++p) {
        if (p > 0) factorial *= p;
        const double expected = std::pow(nu + 3.0 / (2.0 * h), p + 1);
        for (JumpSide side : {JumpSide::positive, JumpSide::negative}) {
            OperatorSpec spec;
            spec.side = side;
            spec.p = p;
            spec.nu = nu;
            spec.lambda = lambda;
            spec.n = n;
            spec.h = h;
            const BandedMatrix a = build_A_operator(spec);
            for (std::size_t i = 0; i < n; ++i) {
                const double rebuilt = a.get(i, i) * lambda * factorial;
                worst = std::max(worst,
                                 std::abs(rebuilt - expected) / expected);
            }
        }
    }

    const bool ok = worst <= 1e-12;
    report(1, ok, "max diagonal deviation " + fmt(worst) + " (tol 1e-12)");
    CHECK(ok);
}

TEST_CASE("criterion 2: emitted step table matches the quoted figures") {
    // Every computed step must round to its quoted column at the quoted
    // precision: |h - quoted| <= 0.5 * 10^-decimals.
    TempDir dir;
    const std::filesystem::path file = dir.path / "table1.csv";
    emit_table1(file);

    std::ifstream in(file);
    REQUIRE(in.good());
    std::string line;
    bool ok = true;
    int rows = 0;
    double worst_margin = 0.0; // |h - quoted| / tol, want <= 1
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#' || line.rfind("scheme,", 0) == 0) {
            continue;
        }
        std::stringstream ss(line);
        std::string scheme, n_str, h_str, q_str;
        std::getline(ss, scheme, ',');
        std::getline(ss, n_str, ',');
        std::getline(ss, h_str, ',');
        std::getline(ss, q_str, ',');
        const double h = std::stod(h_str);
        const double quoted = std::stod(q_str);
        const auto dot = q_str.find('.');
        REQUIRE(dot != std::string::npos);
        const auto decimals = static_cast<int>(q_str.size() - dot - 1);
        const double tol = 0.5 * std::pow(10.0, -decimals);
        const double margin = std::abs(h - quoted) / tol;
        worst_margin = std::max(worst_margin, margin);
        if (!(margin <= 1.0 + 1e-9)) ok = false;
        ++rows;
    }
    if (rows != 6) ok = false;
    report(2, ok, std::to_string(rows) + " rows, worst |h-quoted|/halfulp " +
                      fmt(worst_margin));
    CHECK(ok);
}

TEST_CASE("criterion 3: jump-moment closed form agrees with quadrature and the "
          "discrete error halves") {
    // Part 1: closed form against an independent adaptive integration.
    double worst_rel = 0.0;
    for (double nu : {1.0, 2.5}) {
        for (double alpha : {-0.5, -1.0, -1.5, -1.9}) {
            for (double x : {-2.0, 0.0, 2.0}) {
                const double exact = test_integral_exact(x, nu, alpha);
                const double quad = ts::jump_moment_integral(x, nu, alpha);
                const double rel =
                    std::abs(quad - exact) / std::max(1.0, std::abs(exact));
                worst_rel = std::max(worst_rel, rel);
            }
        }
    }
    const bool closed_ok = worst_rel <= 1e-8;

    // Part 2: grid refinement under the default setup halves the error.
    const Config cfg = Config::parse_string("");
    const TestIntegralResult res = run_test_integral(cfg);
    bool halving_ok = res.max_abs_error.size() >= 2;
    double worst_ratio_lo = 1e300;
    double worst_ratio_hi = 0.0;
    for (std::size_t i = 0; i + 1 < res.max_abs_error.size(); ++i) {
        const double ratio = res.max_abs_error[i] / res.max_abs_error[i + 1];
        worst_ratio_lo = std::min(worst_ratio_lo, ratio);
        worst_ratio_hi = std::max(worst_ratio_hi, ratio);
        if (!(ratio >= 1.4 && ratio <= 2.6)) halving_ok = false;
    }

    const bool ok = closed_ok && halving_ok;
    report(3, ok, "closed-form rel err " + fmt(worst_rel) +
                      ", halving ratios in [" + fmt(worst_ratio_lo) + ", " +
                      fmt(worst_ratio_hi) + "]");
    CHECK(ok);
}

TEST_CASE("criterion 4: time steppers converge at their design orders") {
    bool ok = true;
    std::string detail;

    // Crank-Nicolson at order 2 on a mild operator.
    {
        const BandedMatrix a = tail_operator(0.2, 8);
        SchemeConfig cfg;
        cfg.pade = PadeScheme::cn11;
        const std::vector<double> thetas = {4e-2, 2e-2, 1e-2};
        for (RateSign sign : {RateSign::growth, RateSign::decay}) {
            cfg.sign = sign;
            std::vector<double> errs;
            for (double th : thetas) errs.push_back(march_error(a, cfg, 0.64, th));
            const double order = observed_order(thetas, errs);
            if (!(order > 1.7 && order < 2.3)) ok = false;
            detail += (sign == RateSign::growth ? "cn+ " : "cn- ") + fmt(order) + " ";
        }
    }

    // Pade(1,2) at order 3 and Pade(2,2) at order 4 need a fast rate to keep
    // the high-order terms above roundoff.
    {
        const BandedMatrix a = tail_operator(20.0, 8);
        const std::vector<double> thetas = {1e-2, 5e-3, 2.5e-3};
        for (PadeScheme scheme : {PadeScheme::pade12, PadeScheme::pade22}) {
            SchemeConfig cfg;
            cfg.pade = scheme;
            std::vector<double> errs;
            for (double th : thetas) errs.push_back(march_error(a, cfg, 0.32, th));
            const double order = observed_order(thetas, errs);
            const double lo = scheme == PadeScheme::pade12 ? 2.7 : 3.7;
            if (!(order > lo && order < lo + 0.6)) ok = false;
            detail += (scheme == PadeScheme::pade12 ? "p12 " : "p22 ") +
                      fmt(order) + " ";
        }
    }

    // The diffusion-killed model marches at order 2.
    {
        const std::size_t n = 8;
        const double alpha = 1.0;
        const double lambda = 0.2;
        const BandedMatrix a = build_basic_operator(alpha, n, 1.0);
        ts::Dense g = ts::dense_inverse(ts::from_banded(a));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) g[i][j] *= lambda * alpha * alpha;
            g[i][i] += lambda;
        }
        const double total_time = 0.64;
        const std::vector<double> thetas = {4e-2, 2e-2, 1e-2};
        const std::vector<double> c0 = smooth_seed(n);
        std::vector<double> errs;
        for (double th : thetas) {
            const auto n_steps =
                static_cast<std::size_t>(std::lround(total_time / th));
            std::vector<double> u = c0;
            for (std::size_t k = 0; k < n_steps; ++k) {
                u = basic_model_step(a, alpha, lambda, th, u);
            }
            ts::Dense gt = g;
            for (auto& row : gt) {
                for (auto& v : row) v *= total_time;
            }
            errs.push_back(
                ts::vec_inf_diff(u, ts::dense_matvec(ts::dense_expm(gt), c0)));
        }
        const double order = observed_order(thetas, errs);
        if (!(order > 1.7 && order < 2.3)) ok = false;
        detail += "basic " + fmt(order);
    }

    report(4, ok, "observed orders: " + detail);
    CHECK(ok);
}

TEST_CASE("criterion 5: stability sweep reports every default case stable") {
    const Config cfg = Config::parse_string("");
    const StabilitySweepResult res = run_stability_sweep(cfg);

    bool ok = !res.cn_rows.empty() && !res.vg_rows.empty();
    double worst_radius = 0.0;
    for (const StabilityCnRow& row : res.cn_rows) {
        worst_radius = std::max(worst_radius, row.radius);
        if (!row.stable || !(row.radius <= 1.0 + 1e-12) || !(row.zeta < 0.0)) {
            ok = false;
        }
    }
    for (const StabilityVgRow& row : res.vg_rows) {
        const bool unconditional = row.nu >= 1.0;
        if (unconditional) {
            if (row.max_stable_h != 0.0 || !row.admissible) ok = false;
        } else {
            const double bound = 3.0 / (2.0 * (1.0 - row.nu));
            if (std::abs(row.max_stable_h - bound) > 1e-12) ok = false;
            if (row.admissible != (row.h < bound)) ok = false;
        }
        if (row.admissible && !(row.diag_ratio < 1.0)) ok = false;
    }
    report(5, ok, std::to_string(res.cn_rows.size()) + " cn rows (max radius " +
                      fmt(worst_radius) + "), " +
                      std::to_string(res.vg_rows.size()) + " vg rows");
    CHECK(ok);
}

TEST_CASE("criterion 6: finite differences approach the transform reference "
          "as the window refines") {
    const Config cfg = Config::parse_string("");
    const FdVsFftResult res = run_fd_vs_fft(cfg, 1);

    bool ok = res.max_abs_diff.size() >= 3;
    std::string detail;
    for (std::size_t i = 0; i < res.max_abs_diff.size(); ++i) {
        if (i > 0) {
            // Allow 10% slack on each refinement; require the overall trend.
            if (!(res.max_abs_diff[i] <= 1.1 * res.max_abs_diff[i - 1])) {
                ok = false;
            }
            detail += " ";
        }
        detail += fmt(res.max_abs_diff[i]);
    }
    if (ok && !(res.max_abs_diff.back() < res.max_abs_diff.front())) ok = false;
    report(6, ok, "max |fd - reference| per size: " + detail);
    CHECK(ok);
}

TEST_CASE("criterion 7: infinite-variation quadrature converges in both "
          "refinement directions") {
    const Config cfg = Config::parse_string(
        "[model]\n"
        "nu_plus = 2\n"
        "alpha_plus = 1\n");

    const SweepResult nu_sweep = run_infvar_nu_star_sweep(cfg, 1);
    const SweepResult m_sweep = run_infvar_m_sweep(cfg, 1);

    bool ok = nu_sweep.change.size() >= 3 && m_sweep.change.size() >= 3;
    if (ok) {
        if (!(nu_sweep.change.back() < nu_sweep.change[1])) ok = false;
        if (!(m_sweep.change.back() < m_sweep.change[1])) ok = false;
        for (std::size_t i = 1; i < nu_sweep.change.size(); ++i) {
            if (!std::isfinite(nu_sweep.change[i])) ok = false;
        }
        for (std::size_t i = 1; i < m_sweep.change.size(); ++i) {
            if (!std::isfinite(m_sweep.change[i])) ok = false;
        }
    }
    report(7, ok, "upper-cutoff changes " + fmt(nu_sweep.change[1]) + " -> " +
                      fmt(nu_sweep.change.back()) + ", panel changes " +
                      fmt(m_sweep.change[1]) + " -> " +
                      fmt(m_sweep.change.back()));
    CHECK(ok);
}

TEST_CASE("criterion 8: interpolated fractional order tracks the transform "
          "reference within 3x of the nearest anchor") {
    const Config cfg = Config::parse_string(
        "[model]\n"
        "alpha_plus = -2.5\n");
    const AlphaInterpResult res = run_alpha_interp(cfg, 1);

    const double bound = 3.0 * res.dev_anchor;
    const bool ok = res.dev_interp <= bound;
    report(8, ok, "dev_interp " + fmt(res.dev_interp) + " vs 3x anchor(" +
                      std::to_string(res.ref_anchor) + ") deviation " +
                      fmt(bound) + " (ratio " +
                      fmt(res.dev_interp / std::max(res.dev_anchor, 1e-300)) +
                      ")");
    CHECK_MESSAGE(ok,
                  "pointwise interpolation across integer-order solvers does "
                  "not stay within 3x of the nearest anchor's deviation on "
                  "this configuration; see the printed criterion line");
}

TEST_CASE("criterion 9: banded solves scale linearly with size (advisory)") {
    // Timing is hardware dependent, so this criterion reports but never fails.
    const double h = 0.01;
    auto time_solve = [&](std::size_t n) {
        OperatorSpec spec;
        spec.side = JumpSide::positive;
        spec.p = 1;
        spec.nu = 1.0;
        spec.lambda = 0.5;
        spec.n = n;
        spec.h = h;
        const BandedMatrix a = build_A_operator(spec);
        std::vector<double> rhs(n);
        std::uint64_t state = 42;
        for (double& v : rhs) v = ts::lcg_uniform(state);
        std::vector<double> samples;
        volatile double sink = 0.0;
        for (int rep = 0; rep < 5; ++rep) {
            const auto t0 = std::chrono::steady_clock::now();
            const BandedLU lu(a);
            const std::vector<double> x = lu.solve(rhs);
            const auto t1 = std::chrono::steady_clock::now();
            sink = sink + x[n / 2];
            samples.push_back(
                std::chrono::duration<double>(t1 - t0).count());
        }
        std::sort(samples.begin(), samples.end());
        return samples[samples.size() / 2];
    };

    const double t1 = time_solve(1024);
    const double t2 = time_solve(2048);
    const double ratio = t2 / t1;
    const bool in_range = ratio >= 1.2 && ratio <= 3.5;
    report(9, true, "2048/1024 median time ratio " + fmt(ratio) +
                        (in_range ? " (linear-cost range)"
                                  : " (outside advisory range; timing noise)"));
    CHECK(true);
}
