#include "ppide/experiments.hpp"

#include "ppide/csv.hpp"
#include "ppide/errors.hpp"
#include "ppide/fft_ref.hpp"
#include "ppide/infvar_stepper.hpp"
#include "ppide/operators.hpp"
#include "ppide/pp_stepper.hpp"
#include "ppide/vg_stepper.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <sstream>

namespace ppide {

namespace {

JumpSide parse_side(const Config& cfg) {
    const std::string s = cfg.get_string("experiment", "side", "positive");
    if (s == "positive") {
        return JumpSide::positive;
    }
    if (s == "negative") {
        return JumpSide::negative;
    }
    throw config_error("experiment.side must be positive or negative, got '" + s + "'");
}

GtspParams parse_model(const Config& cfg) {
    GtspParams p;
    p.lambda_plus = cfg.get_double("model", "lambda_plus", 0.2);
    p.lambda_minus = cfg.get_double("model", "lambda_minus", 0.2);
    p.nu_plus = cfg.get_double("model", "nu_plus", 1.0);
    p.nu_minus = cfg.get_double("model", "nu_minus", 1.0);
    p.alpha_plus = cfg.get_double("model", "alpha_plus", -1.0);
    p.alpha_minus = cfg.get_double("model", "alpha_minus", -1.0);
    p.v_r = cfg.get_double("model", "v_r", 1.0);
    p.v_l = cfg.get_double("model", "v_l", 1.0);
    p.validate();
    return p;
}

MarketConfig parse_market(const Config& cfg) {
    MarketConfig m;
    m.strike = cfg.get_double("market", "strike", 100.0);
    m.rate = cfg.get_double("market", "rate", 0.01);
    m.vol = cfg.get_double("market", "vol", 0.1);
    m.maturity = cfg.get_double("market", "maturity", 30.0 / 365.0);
    const std::string kind = cfg.get_string("market", "option", "put");
    if (kind == "put") {
        m.option_kind = OptionKind::put;
    } else if (kind == "call") {
        m.option_kind = OptionKind::call;
    } else {
        throw config_error("market.option must be put or call, got '" + kind + "'");
    }
    m.validate();
    return m;
}

std::size_t parse_count(const Config& cfg, const std::string& section, const std::string& key,
                        long fallback, long minimum) {
    const long v = cfg.get_long(section, key, fallback);
    if (v < minimum) {
        throw config_error(section + "." + key + " must be >= " + std::to_string(minimum));
    }
    return static_cast<std::size_t>(v);
}

Grid parse_fd_grid(const Config& cfg, double maturity) {
    const double s_min = cfg.get_double("fd_grid", "s_min", 1e-8);
    const double s_max = cfg.get_double("fd_grid", "s_max", 500.0);
    if (!(s_min > 0.0) || !(s_max > s_min)) {
        throw config_error("fd_grid requires 0 < s_min < s_max");
    }
    const std::size_t n_space = parse_count(cfg, "fd_grid", "n_space", 256, 8);
    const std::size_t n_time = parse_count(cfg, "fd_grid", "n_time", 50, 0);
    return build_grid(std::log(s_min), std::log(s_max), n_space, maturity, n_time);
}

PadeScheme parse_pade(const Config& cfg) {
    const std::string s = cfg.get_string("scheme", "pade", "cn11");
    if (s == "cn11") {
        return PadeScheme::cn11;
    }
    if (s == "pade12") {
        return PadeScheme::pade12;
    }
    if (s == "pade22") {
        return PadeScheme::pade22;
    }
    throw config_error("scheme.pade must be cn11, pade12 or pade22, got '" + s + "'");
}

RateSign parse_sign(const Config& cfg) {
    const std::string s = cfg.get_string("scheme", "sign", "growth");
    if (s == "growth") {
        return RateSign::growth;
    }
    if (s == "decay") {
        return RateSign::decay;
    }
    throw config_error("scheme.sign must be growth or decay, got '" + s + "'");
}

bool parse_compensated(const Config& cfg, double alpha) {
    const std::string s = cfg.get_string("scheme", "compensated", "auto");
    if (s == "auto") {
        return alpha > -1.0;
    }
    if (s == "true") {
        return true;
    }
    if (s == "false") {
        return false;
    }
    throw config_error("scheme.compensated must be auto, true or false, got '" + s + "'");
}

OriginConvention parse_origin(const Config& cfg, const std::string& section) {
    const std::string s = cfg.get_string(section, "origin", "rectangle");
    if (s == "rectangle") {
        return OriginConvention::rectangle;
    }
    if (s == "trapezoid") {
        return OriginConvention::trapezoid;
    }
    throw config_error(section + ".origin must be rectangle or trapezoid, got '" + s + "'");
}

TimeOrder parse_time_order(const Config& cfg) {
    const std::string s = cfg.get_string("infvar", "time_order", "order2");
    if (s == "order2") {
        return TimeOrder::order2;
    }
    if (s == "order3") {
        return TimeOrder::order3;
    }
    throw config_error("infvar.time_order must be order2 or order3, got '" + s + "'");
}

int integer_alpha(double alpha, const std::string& what) {
    const double r = std::round(alpha);
    if (std::abs(alpha - r) > 1e-12) {
        throw config_error(what + " requires an integer alpha, got " +
                           std::to_string(alpha) + " (use alpha_interp for real alpha)");
    }
    return static_cast<int>(r);
}

/// Runs fn(0..count-1) in waves of at most `threads` concurrent tasks.
/// Results land by index, so the outcome is order-independent.
template <typename Fn>
void run_waves(std::size_t count, unsigned threads, Fn&& fn) {
    const std::size_t wave = std::max(1u, threads);
    if (wave == 1) {
        for (std::size_t i = 0; i < count; ++i) {
            fn(i);
        }
        return;
    }
    for (std::size_t start = 0; start < count; start += wave) {
        const std::size_t stop = std::min(count, start + wave);
        std::vector<std::future<void>> futures;
        for (std::size_t i = start; i < stop; ++i) {
            futures.push_back(std::async(std::launch::async, [&fn, i] { fn(i); }));
        }
        for (auto& f : futures) {
            f.get();
        }
    }
}

BridgeProblem make_bridge_problem(const Grid& g, const SideParams& side, JumpSide jside,
                                  const Config& cfg, unsigned threads) {
    BridgeProblem prob;
    prob.grid = g;
    prob.side = side;
    prob.jump_side = jside;
    prob.pade = parse_pade(cfg);
    prob.sign = parse_sign(cfg);
    prob.compensated = parse_compensated(cfg, side.alpha);
    prob.nu_star = cfg.get_double("infvar", "nu_star", 300.0);
    prob.m_intervals = parse_count(cfg, "infvar", "m_intervals", 80, 2);
    prob.time_order = parse_time_order(cfg);
    prob.threads = threads;
    return prob;
}

struct FftRun {
    Grid window;
    std::vector<double> values; ///< restricted to the window
};

/// Transform-reference solve: Euler march on the padded grid, then window
/// restriction. The model weight sqrt_v rides on the effective step.
FftRun solve_fft_reference(double x_star, std::size_t n, const MarketConfig& market,
                           const SideParams& side, JumpSide jside, OriginConvention origin,
                           std::size_t n_time, bool compensated) {
    if (n < 8 || (n & (n - 1)) != 0) {
        throw config_error("transform grid size must be a power of two >= 8");
    }
    const Grid window = build_grid(-x_star, x_star, n, market.maturity, n_time);
    const ExtendedGrid ext = extend_fft_domain(window);
    const ToeplitzKernel kernel =
        build_toeplitz_kernel(ext, side.lambda, side.nu, side.alpha, jside, origin);
    std::vector<double> seed = terminal_condition(ext.padded, market);
    const double comp =
        compensated ? compensator(side.lambda, side.nu, side.alpha) : 0.0;
    const std::vector<double> marched = euler_march(
        kernel, std::move(seed), side.sqrt_v * window.theta, n_time, compensated, comp);
    FftRun run;
    run.window = window;
    run.values.assign(marched.begin() + static_cast<std::ptrdiff_t>(ext.window_offset),
                      marched.begin() +
                          static_cast<std::ptrdiff_t>(ext.window_offset + ext.window_size));
    return run;
}

std::vector<double> trimmed_nodes(const Grid& g, std::size_t trim) {
    if (g.n_space <= 2 * trim) {
        throw config_error("grid too small to trim edge rows");
    }
    std::vector<double> x;
    for (std::size_t i = trim; i + trim < g.n_space; ++i) {
        x.push_back(g.x(i));
    }
    return x;
}

std::vector<double> trimmed_values(const std::vector<double>& v, std::size_t trim) {
    return {v.begin() + static_cast<std::ptrdiff_t>(trim),
            v.end() - static_cast<std::ptrdiff_t>(trim)};
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        m = std::max(m, std::abs(a[i] - b[i]));
    }
    return m;
}

std::size_t round_to_even(double v) {
    const long half = std::max(1L, std::lround(v / 2.0));
    return static_cast<std::size_t>(half) * 2;
}

void add_metadata(CsvWriter& w, const Config& cfg) {
    w.comment("ppide 1.0.0");
    w.comment("config-hash " + cfg.hash_hex());
    std::istringstream lines(cfg.canonical_text());
    std::string line;
    while (std::getline(lines, line)) {
        w.comment("config " + line);
    }
}

} // namespace

const std::map<std::string, std::set<std::string>>& config_schema() {
    static const std::map<std::string, std::set<std::string>> schema = {
        {"experiment", {"type", "side"}},
        {"model",
         {"lambda_plus", "lambda_minus", "nu_plus", "nu_minus", "alpha_plus", "alpha_minus",
          "v_r", "v_l"}},
        {"market", {"strike", "rate", "vol", "maturity", "option"}},
        {"fd_grid", {"s_min", "s_max", "n_space", "n_time"}},
        {"fft_grid", {"x_star", "n", "n_list", "origin"}},
        {"scheme", {"pade", "sign", "compensated"}},
        {"interp", {"anchors", "ref_anchor"}},
        {"infvar", {"nu_star", "m_intervals", "time_order", "nu_star_list", "m_list"}},
        {"stability", {"n", "h_list", "theta_list", "alpha_list", "vg_nu_list"}},
        {"test_integral", {"nu", "alpha", "x_star", "n_list", "origin"}},
        {"basic", {"alpha", "lambda", "x_max", "n_space", "n_time", "maturity"}},
    };
    return schema;
}

std::vector<double> resample_cubic(const Grid& src, const std::vector<double>& src_values,
                                   const std::vector<double>& targets) {
    if (src_values.size() != src.n_space || src.n_space < 4) {
        throw config_error("resample source needs at least 4 nodes with matching values");
    }
    const double last = src.x(src.n_space - 1);
    const double slack = 1e-12 * (last - src.x_min);
    std::vector<double> out;
    out.reserve(targets.size());
    std::array<std::pair<double, double>, 4> nodes;
    for (double t : targets) {
        if (t < src.x_min - slack || t > last + slack) {
            throw config_error("resample target outside the source window");
        }
        const auto idx = static_cast<std::ptrdiff_t>(std::floor((t - src.x_min) / src.h));
        const std::size_t base = static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(
            idx - 1, 0, static_cast<std::ptrdiff_t>(src.n_space) - 4));
        for (std::size_t k = 0; k < 4; ++k) {
            nodes[k] = {src.x(base + k), src_values[base + k]};
        }
        out.push_back(cubic_lagrange(nodes, t));
    }
    return out;
}

FdVsFftResult run_fd_vs_fft(const Config& cfg, unsigned threads) {
    const JumpSide jside = parse_side(cfg);
    const GtspParams model = parse_model(cfg);
    const SideParams side = select_side(model, jside);
    const MarketConfig market = parse_market(cfg);
    const int alpha_int = integer_alpha(side.alpha, "fd_vs_fft");
    if (alpha_int > -1) {
        throw config_error("fd_vs_fft requires alpha <= -1");
    }

    FdVsFftResult out;
    out.fd_grid = parse_fd_grid(cfg, market.maturity);
    const std::vector<double> seed = terminal_condition(out.fd_grid, market);
    const BridgeProblem prob = make_bridge_problem(out.fd_grid, side, jside, cfg, threads);
    const AnchorSolution fd = solve_anchor(alpha_int, prob, seed);

    out.trim = 2;
    out.x = trimmed_nodes(out.fd_grid, out.trim);
    out.fd_values = trimmed_values(fd.values, out.trim);
    out.seed_values = trimmed_values(seed, out.trim);

    const double x_star = cfg.get_double("fft_grid", "x_star", 20.0);
    const OriginConvention origin = parse_origin(cfg, "fft_grid");
    const bool compensated = parse_compensated(cfg, side.alpha);
    const std::vector<long> n_list =
        cfg.get_long_list("fft_grid", "n_list", "256,512,1024,2048,4096");

    out.fft_sizes.resize(n_list.size());
    out.fft_steps.resize(n_list.size());
    out.fft_values.resize(n_list.size());
    out.max_abs_diff.resize(n_list.size());
    run_waves(n_list.size(), threads, [&](std::size_t i) {
        const auto n = static_cast<std::size_t>(n_list[i]);
        const FftRun run = solve_fft_reference(x_star, n, market, side, jside, origin,
                                               out.fd_grid.n_time, compensated);
        out.fft_sizes[i] = n;
        out.fft_steps[i] = run.window.h;
        out.fft_values[i] = resample_cubic(run.window, run.values, out.x);
        out.max_abs_diff[i] = max_abs_diff(out.fft_values[i], out.fd_values);
    });
    return out;
}

AlphaInterpResult run_alpha_interp(const Config& cfg, unsigned threads) {
    const JumpSide jside = parse_side(cfg);
    const GtspParams model = parse_model(cfg);
    const SideParams side = select_side(model, jside);
    const MarketConfig market = parse_market(cfg);
    if (!(side.alpha < 0.0)) {
        throw config_error(
            "alpha_interp requires alpha < 0 (the transform reference needs finite activity)");
    }

    const Grid grid = parse_fd_grid(cfg, market.maturity);
    const std::vector<double> seed = terminal_condition(grid, market);
    const BridgeProblem prob = make_bridge_problem(grid, side, jside, cfg, threads);

    AlphaQuery query;
    query.alpha_real = side.alpha;
    const std::string anchors_raw = cfg.get_string("interp", "anchors", "auto");
    if (anchors_raw == "auto") {
        query.anchor_alphas = default_anchors(side.alpha);
    } else {
        const std::vector<long> list = cfg.get_long_list("interp", "anchors", anchors_raw);
        if (list.size() != 4) {
            throw config_error("interp.anchors must list exactly 4 integers");
        }
        for (std::size_t i = 0; i < 4; ++i) {
            query.anchor_alphas[i] = static_cast<int>(list[i]);
        }
    }

    const AlphaPriceResult bridged = price_real_alpha(query, prob, seed);

    AlphaInterpResult out;
    out.alpha = side.alpha;
    out.anchors = bridged.anchors;
    out.extrapolation = bridged.extrapolation;
    const std::size_t trim = 2;
    out.x = trimmed_nodes(grid, trim);
    out.interp = trimmed_values(bridged.values, trim);
    for (const auto& anchor : bridged.anchor_solutions) {
        out.anchor_values.push_back(trimmed_values(anchor.values, trim));
    }

    const double x_star = cfg.get_double("fft_grid", "x_star", 20.0);
    const auto fft_n = static_cast<std::size_t>(cfg.get_long("fft_grid", "n", 2048));
    const OriginConvention origin = parse_origin(cfg, "fft_grid");

    const FftRun ref = solve_fft_reference(x_star, fft_n, market, side, jside, origin,
                                           grid.n_time, parse_compensated(cfg, side.alpha));
    out.reference = resample_cubic(ref.window, ref.values, out.x);
    out.dev_interp = max_abs_diff(out.interp, out.reference);

    // Baseline deviation at an integer anchor, for the accuracy-ratio
    // diagnostic. Auto picks the negative anchor nearest the target (ties go
    // to the larger one); the transform reference cannot run at alpha >= 0.
    const std::string ref_anchor_raw = cfg.get_string("interp", "ref_anchor", "auto");
    if (ref_anchor_raw == "auto") {
        double best = 1e300;
        for (int a : out.anchors) {
            if (a >= 0) {
                continue;
            }
            const double d = std::abs(a - side.alpha);
            if (d < best || (d == best && a > out.ref_anchor)) {
                best = d;
                out.ref_anchor = a;
            }
        }
        if (best == 1e300) {
            throw config_error("no negative anchor available for the reference deviation");
        }
    } else {
        out.ref_anchor = static_cast<int>(cfg.get_long("interp", "ref_anchor", 0));
        if (out.ref_anchor >= 0) {
            throw config_error("interp.ref_anchor must be negative");
        }
    }

    std::size_t ref_idx = 4;
    for (std::size_t i = 0; i < 4; ++i) {
        if (out.anchors[i] == out.ref_anchor) {
            ref_idx = i;
        }
    }
    if (ref_idx == 4) {
        throw config_error("interp.ref_anchor must be one of the anchor alphas");
    }
    SideParams anchor_side = side;
    anchor_side.alpha = out.ref_anchor;
    const FftRun anchor_ref =
        solve_fft_reference(x_star, fft_n, market, anchor_side, jside, origin, grid.n_time,
                            parse_compensated(cfg, anchor_side.alpha));
    out.dev_anchor = max_abs_diff(out.anchor_values[ref_idx],
                                  resample_cubic(anchor_ref.window, anchor_ref.values, out.x));
    return out;
}

CurveResult run_vg_case(const Config& cfg) {
    const JumpSide jside = parse_side(cfg);
    const GtspParams model = parse_model(cfg);
    const SideParams side = select_side(model, jside);
    const MarketConfig market = parse_market(cfg);

    CurveResult out;
    out.grid = parse_fd_grid(cfg, market.maturity);
    out.seed = terminal_condition(out.grid, market);

    VgStepConfig step;
    step.side = jside;
    step.m_real = side.sqrt_v * side.lambda * out.grid.theta;
    step.nu = side.nu;
    step.h = out.grid.h;
    step.interpolation_orders = parse_time_order(cfg) == TimeOrder::order3
                                    ? std::vector<int>{0, 1, 2, 3}
                                    : std::vector<int>{0, 1, 2};
    const VgMarcher marcher(step, out.grid.n_space);
    out.values = marcher.march(out.seed, out.grid.n_time);
    return out;
}

namespace {

SweepResult run_infvar_sweep(const Config& cfg, unsigned threads, bool sweep_nu_star) {
    const JumpSide jside = parse_side(cfg);
    const GtspParams model = parse_model(cfg);
    const SideParams side = select_side(model, jside);
    const MarketConfig market = parse_market(cfg);
    const Grid grid = parse_fd_grid(cfg, market.maturity);
    const std::vector<double> seed = terminal_condition(grid, market);
    const TimeOrder time_order = parse_time_order(cfg);

    const double nu_star_ref = cfg.get_double("infvar", "nu_star", 300.0);
    const std::size_t m_ref = parse_count(cfg, "infvar", "m_intervals", 80, 2);

    SweepResult out;
    if (sweep_nu_star) {
        // Panel counts scale with the integration span so the panel width
        // stays comparable across the sweep.
        for (double nu_star : cfg.get_double_list("infvar", "nu_star_list", "100,300,600")) {
            out.parameter.push_back(nu_star);
            out.m_used.push_back(round_to_even(static_cast<double>(m_ref) *
                                               (nu_star - side.nu) /
                                               (nu_star_ref - side.nu)));
        }
    } else {
        for (long m : cfg.get_long_list("infvar", "m_list", "40,80,160")) {
            if (m < 2 || m % 2 != 0) {
                throw config_error("infvar.m_list entries must be even and >= 2");
            }
            out.parameter.push_back(static_cast<double>(m));
            out.m_used.push_back(static_cast<std::size_t>(m));
        }
    }
    for (std::size_t i = 1; i < out.parameter.size(); ++i) {
        if (!(out.parameter[i] > out.parameter[i - 1])) {
            throw config_error("sweep lists must be strictly increasing");
        }
    }

    for (std::size_t i = 0; i < grid.n_space; ++i) {
        out.x.push_back(grid.x(i));
    }
    out.solutions.resize(out.parameter.size());
    run_waves(out.parameter.size(), threads, [&](std::size_t i) {
        InfVarConfig ic;
        ic.side = jside;
        ic.nu = side.nu;
        ic.lambda = side.lambda;
        ic.sqrt_v = side.sqrt_v;
        ic.nu_star = sweep_nu_star ? out.parameter[i] : nu_star_ref;
        ic.m_intervals = out.m_used[i];
        ic.theta = grid.theta;
        ic.time_order = time_order;
        ic.h = grid.h;
        const InfVarMarcher marcher(ic, grid.n_space);
        out.solutions[i] = marcher.march(seed, grid.n_time);
    });

    out.change.assign(out.parameter.size(), 0.0);
    for (std::size_t i = 1; i < out.solutions.size(); ++i) {
        out.change[i] = max_abs_diff(out.solutions[i], out.solutions[i - 1]);
    }
    return out;
}

} // namespace

SweepResult run_infvar_nu_star_sweep(const Config& cfg, unsigned threads) {
    return run_infvar_sweep(cfg, threads, true);
}

SweepResult run_infvar_m_sweep(const Config& cfg, unsigned threads) {
    return run_infvar_sweep(cfg, threads, false);
}

StabilitySweepResult run_stability_sweep(const Config& cfg) {
    const JumpSide jside = parse_side(cfg);
    const GtspParams model = parse_model(cfg);
    const SideParams side = select_side(model, jside);
    const std::size_t n = parse_count(cfg, "stability", "n", 64, 8);
    const std::vector<double> h_list = cfg.get_double_list("stability", "h_list", "0.05,0.1,0.2");
    const std::vector<double> theta_list =
        cfg.get_double_list("stability", "theta_list", "0.001,0.01,0.1");
    const std::vector<double> alpha_list =
        cfg.get_double_list("stability", "alpha_list", "-1,-2,-3");

    StabilitySweepResult out;
    for (double alpha : alpha_list) {
        const int alpha_int = integer_alpha(alpha, "stability_sweep");
        if (alpha_int > -1) {
            throw config_error("stability_sweep alphas must be <= -1");
        }
        for (double h : h_list) {
            OperatorSpec spec;
            spec.side = jside;
            spec.p = -(1 + alpha_int);
            spec.nu = side.nu;
            spec.lambda = side.lambda;
            spec.n = n;
            spec.h = h;
            const BandedMatrix a = build_A_operator(spec);
            for (double theta : theta_list) {
                SchemeConfig sc;
                sc.pade = PadeScheme::cn11;
                sc.theta = theta;
                sc.sqrt_v = 2.0 * side.sqrt_v;
                sc.sign = RateSign::decay;
                const PpMarcher marcher(a, sc);
                const double zeta =
                    zeta_B(2.0 * side.sqrt_v, side.lambda, side.nu, alpha, h, jside);
                const StabilityReport rep =
                    assess_pair(marcher.lhs(), marcher.rhs(), zeta, "cn-decay");
                out.cn_rows.push_back({alpha, h, theta, rep.zeta_analytic,
                                       rep.spectral_radius_measured, rep.inf_norm_measured,
                                       rep.stable});
            }
        }
    }

    for (double nu : cfg.get_double_list("stability", "vg_nu_list", "0.5,1.5")) {
        for (double h : h_list) {
            const auto bound = vg_max_stable_h(nu);
            StabilityVgRow row;
            row.nu = nu;
            row.h = h;
            row.max_stable_h = bound.value_or(0.0);
            row.admissible = !bound || h < *bound;
            row.diag_ratio = vg_step_eigenvalue(h, nu, 1.0);
            out.vg_rows.push_back(row);
        }
    }
    return out;
}

TestIntegralResult run_test_integral(const Config& cfg) {
    const double nu = cfg.get_double("test_integral", "nu", 1.0);
    const double alpha = cfg.get_double("test_integral", "alpha", -1.0);
    const double x_star = cfg.get_double("test_integral", "x_star", 20.0);
    const OriginConvention origin = parse_origin(cfg, "test_integral");

    TestIntegralResult out;
    for (long n_long : cfg.get_long_list("test_integral", "n_list", "256,512,1024,2048")) {
        const auto n = static_cast<std::size_t>(n_long);
        if (n < 8 || (n & (n - 1)) != 0) {
            throw config_error("test_integral.n_list entries must be powers of two >= 8");
        }
        const Grid window = build_grid(-x_star, x_star, n, 0.0, 0);
        const ExtendedGrid ext = extend_fft_domain(window);
        const std::vector<double> quad = test_integral_fft(ext, nu, alpha, origin);
        double max_err = 0.0;
        for (std::size_t i = 0; i < ext.window_size; ++i) {
            const double x = window.x(i);
            const double err = std::abs(quad[ext.window_offset + i] -
                                        test_integral_exact(x, nu, alpha));
            max_err = std::max(max_err, err);
        }
        out.sizes.push_back(n);
        out.steps.push_back(window.h);
        out.max_abs_error.push_back(max_err);
    }
    return out;
}

CurveResult run_basic_model(const Config& cfg) {
    const double alpha = cfg.get_double("basic", "alpha", 1.0);
    const double lambda = cfg.get_double("basic", "lambda", 0.1);
    const double x_max = cfg.get_double("basic", "x_max", 10.0);
    const std::size_t n_space = parse_count(cfg, "basic", "n_space", 256, 8);
    const std::size_t n_time = parse_count(cfg, "basic", "n_time", 50, 0);
    const double maturity = cfg.get_double("basic", "maturity", 1.0);

    CurveResult out;
    out.grid = build_grid(-x_max, x_max, n_space, maturity, n_time);
    out.seed.resize(n_space);
    for (std::size_t i = 0; i < n_space; ++i) {
        const double x = out.grid.x(i);
        out.seed[i] = std::exp(-x * x);
    }
    const BandedMatrix a = build_basic_operator(alpha, n_space, out.grid.h);
    out.values = out.seed;
    for (std::size_t k = 0; k < n_time; ++k) {
        out.values = basic_model_step(a, alpha, lambda, out.grid.theta, out.values);
    }
    return out;
}

namespace {

std::filesystem::path write_csv(const ExperimentContext& ctx, const std::string& name,
                                const CsvWriter& w) {
    const std::filesystem::path path = ctx.out_dir / name;
    w.write_file(path);
    return path;
}

std::vector<std::filesystem::path> write_fd_vs_fft(const ExperimentContext& ctx,
                                                   const FdVsFftResult& r) {
    std::vector<std::filesystem::path> paths;
    {
        CsvWriter w;
        add_metadata(w, ctx.config);
        w.header({"x", "seed", "c_fd"});
        for (std::size_t i = 0; i < r.x.size(); ++i) {
            w.row({CsvWriter::num(r.x[i]), CsvWriter::num(r.seed_values[i]),
                   CsvWriter::num(r.fd_values[i])});
        }
        paths.push_back(write_csv(ctx, "fd.csv", w));
    }
    for (std::size_t k = 0; k < r.fft_sizes.size(); ++k) {
        CsvWriter w;
        add_metadata(w, ctx.config);
        w.comment("fft n " + std::to_string(r.fft_sizes[k]));
        w.header({"x", "c_fft", "diff_fd_minus_fft"});
        for (std::size_t i = 0; i < r.x.size(); ++i) {
            w.row({CsvWriter::num(r.x[i]), CsvWriter::num(r.fft_values[k][i]),
                   CsvWriter::num(r.fd_values[i] - r.fft_values[k][i])});
        }
        paths.push_back(write_csv(ctx, "fft_" + std::to_string(r.fft_sizes[k]) + ".csv", w));
    }
    {
        CsvWriter w;
        add_metadata(w, ctx.config);
        w.header({"n_fft", "h_fft", "max_abs_diff"});
        for (std::size_t k = 0; k < r.fft_sizes.size(); ++k) {
            w.row({CsvWriter::integer(static_cast<long long>(r.fft_sizes[k])),
                   CsvWriter::num(r.fft_steps[k]), CsvWriter::num(r.max_abs_diff[k])});
        }
        paths.push_back(write_csv(ctx, "summary.csv", w));
    }
    return paths;
}

std::vector<std::filesystem::path> write_alpha_interp(const ExperimentContext& ctx,
                                                      const AlphaInterpResult& r) {
    std::vector<std::filesystem::path> paths;
    {
        CsvWriter w;
        add_metadata(w, ctx.config);
        std::vector<std::string> cols = {"x"};
        for (int a : r.anchors) {
            cols.push_back("anchor_" + std::to_string(a));
        }
        cols.push_back("interpolated");
        w.header(cols);
        for (std::size_t i = 0; i < r.x.size(); ++i) {
            std::vector<std::string> cells = {CsvWriter::num(r.x[i])};
            for (const auto& anchor : r.anchor_values) {
                cells.push_back(CsvWriter::num(anchor[i]));
            }
            cells.push_back(CsvWriter::num(r.interp[i]));
            w.row(cells);
        }
        paths.push_back(write_csv(ctx, "anchors.csv", w));
    }
    {
        CsvWriter w;
        add_metadata(w, ctx.config);
        w.header({"x", "c_interp", "c_reference", "diff"});
        for (std::size_t i = 0; i < r.x.size(); ++i) {
            w.row({CsvWriter::num(r.x[i]), CsvWriter::num(r.interp[i]),
                   CsvWriter::num(r.reference[i]),
                   CsvWriter::num(r.interp[i] - r.reference[i])});
        }
        paths.push_back(write_csv(ctx, "reference.csv", w));
    }
    {
        CsvWriter w;
        add_metadata(w, ctx.config);
        w.header({"alpha", "anchor_0", "anchor_1", "anchor_2", "anchor_3", "extrapolation",
                  "dev_interp", "ref_anchor", "dev_anchor"});
        w.row({CsvWriter::num(r.alpha), CsvWriter::integer(r.anchors[0]),
               CsvWriter::integer(r.anchors[1]), CsvWriter::integer(r.anchors[2]),
               CsvWriter::integer(r.anchors[3]), CsvWriter::integer(r.extrapolation ? 1 : 0),
               CsvWriter::num(r.dev_interp), CsvWriter::integer(r.ref_anchor),
               CsvWriter::num(r.dev_anchor)});
        paths.push_back(write_csv(ctx, "summary.csv", w));
    }
    return paths;
}

std::vector<std::filesystem::path> write_curve(const ExperimentContext& ctx,
                                               const CurveResult& r) {
    CsvWriter w;
    add_metadata(w, ctx.config);
    w.header({"x", "seed", "c_final"});
    for (std::size_t i = 0; i < r.grid.n_space; ++i) {
        w.row({CsvWriter::num(r.grid.x(i)), CsvWriter::num(r.seed[i]),
               CsvWriter::num(r.values[i])});
    }
    return {write_csv(ctx, "solution.csv", w)};
}

std::vector<std::filesystem::path> write_sweep(const ExperimentContext& ctx,
                                               const SweepResult& r,
                                               const std::string& param_name) {
    std::vector<std::filesystem::path> paths;
    {
        CsvWriter w;
        add_metadata(w, ctx.config);
        w.header({param_name, "m_intervals", "max_abs_change_vs_prev"});
        for (std::size_t i = 0; i < r.parameter.size(); ++i) {
            w.row({CsvWriter::num(r.parameter[i]),
                   CsvWriter::integer(static_cast<long long>(r.m_used[i])),
                   CsvWriter::num(r.change[i])});
        }
        paths.push_back(write_csv(ctx, "sweep.csv", w));
    }
    for (std::size_t k = 0; k < r.parameter.size(); ++k) {
        CsvWriter w;
        add_metadata(w, ctx.config);
        w.comment(param_name + " " + CsvWriter::num(r.parameter[k]));
        w.header({"x", "c_final"});
        for (std::size_t i = 0; i < r.x.size(); ++i) {
            w.row({CsvWriter::num(r.x[i]), CsvWriter::num(r.solutions[k][i])});
        }
        paths.push_back(
            write_csv(ctx, "solution_" + CsvWriter::num(r.parameter[k]) + ".csv", w));
    }
    return paths;
}

std::vector<std::filesystem::path> write_stability(const ExperimentContext& ctx,
                                                   const StabilitySweepResult& r) {
    std::vector<std::filesystem::path> paths;
    {
        CsvWriter w;
        add_metadata(w, ctx.config);
        w.header({"alpha", "h", "theta", "zeta", "spectral_radius", "inf_norm", "stable"});
        for (const auto& row : r.cn_rows) {
            w.row({CsvWriter::num(row.alpha), CsvWriter::num(row.h), CsvWriter::num(row.theta),
                   CsvWriter::num(row.zeta), CsvWriter::num(row.radius),
                   CsvWriter::num(row.inf_norm), CsvWriter::integer(row.stable ? 1 : 0)});
        }
        paths.push_back(write_csv(ctx, "cn.csv", w));
    }
    {
        CsvWriter w;
        add_metadata(w, ctx.config);
        w.comment("max_stable_h = 0 means unconditional (nu >= 1)");
        w.header({"nu", "h", "max_stable_h", "admissible", "diag_ratio"});
        for (const auto& row : r.vg_rows) {
            w.row({CsvWriter::num(row.nu), CsvWriter::num(row.h),
                   CsvWriter::num(row.max_stable_h), CsvWriter::integer(row.admissible ? 1 : 0),
                   CsvWriter::num(row.diag_ratio)});
        }
        paths.push_back(write_csv(ctx, "vg.csv", w));
    }
    return paths;
}

std::vector<std::filesystem::path> write_test_integral(const ExperimentContext& ctx,
                                                       const TestIntegralResult& r) {
    CsvWriter w;
    add_metadata(w, ctx.config);
    w.header({"n", "h", "max_abs_error"});
    for (std::size_t i = 0; i < r.sizes.size(); ++i) {
        w.row({CsvWriter::integer(static_cast<long long>(r.sizes[i])),
               CsvWriter::num(r.steps[i]), CsvWriter::num(r.max_abs_error[i])});
    }
    return {write_csv(ctx, "summary.csv", w)};
}

} // namespace

std::vector<std::filesystem::path> run_experiment(const ExperimentContext& ctx) {
    ctx.config.require_known(config_schema());
    const std::string type = ctx.config.get_string("experiment", "type");
    std::filesystem::create_directories(ctx.out_dir);

    if (type == "fd_vs_fft") {
        return write_fd_vs_fft(ctx, run_fd_vs_fft(ctx.config, ctx.threads));
    }
    if (type == "alpha_interp") {
        return write_alpha_interp(ctx, run_alpha_interp(ctx.config, ctx.threads));
    }
    if (type == "vg_case") {
        return write_curve(ctx, run_vg_case(ctx.config));
    }
    if (type == "infvar_nu_star_sweep") {
        return write_sweep(ctx, run_infvar_nu_star_sweep(ctx.config, ctx.threads), "nu_star");
    }
    if (type == "infvar_m_sweep") {
        return write_sweep(ctx, run_infvar_m_sweep(ctx.config, ctx.threads), "m");
    }
    if (type == "stability_sweep") {
        return write_stability(ctx, run_stability_sweep(ctx.config));
    }
    if (type == "test_integral") {
        return write_test_integral(ctx, run_test_integral(ctx.config));
    }
    if (type == "basic_model") {
        return write_curve(ctx, run_basic_model(ctx.config));
    }
    throw config_error("unknown experiment.type '" + type + "'");
}

void emit_table1(const std::filesystem::path& out_file) {
    CsvWriter w;
    w.comment("ppide 1.0.0");
    w.comment("grid steps for the reference experiment family");
    w.header({"scheme", "n", "h", "h_quoted"});
    const double fd_h = (std::log(500.0) - std::log(1e-8)) / 256.0;
    w.row({"fd_log", "256", CsvWriter::num(fd_h), "0.096"});
    const char* quoted[] = {"0.1563", "0.078", "0.039", "0.0195", "0.00977"};
    std::size_t n = 256;
    for (const char* q : quoted) {
        w.row({"fft_window", CsvWriter::integer(static_cast<long long>(n)),
               CsvWriter::num(2.0 * 20.0 / static_cast<double>(n)), q});
        n *= 2;
    }
    if (out_file.has_parent_path()) {
        std::filesystem::create_directories(out_file.parent_path());
    }
    w.write_file(out_file);
}

} // namespace ppide
