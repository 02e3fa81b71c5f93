#pragma once

#include "ppide/alpha_bridge.hpp"
#include "ppide/config.hpp"
#include "ppide/grid.hpp"
#include "ppide/stability.hpp"

#include <array>
#include <cstddef>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace ppide {

/// Everything run_experiment needs: the parsed config, the output directory,
/// and the worker-thread cap for the embarrassingly parallel parts.
struct ExperimentContext {
    Config config;
    std::filesystem::path out_dir;
    unsigned threads = 1;
};

/// The schema of every recognized config section and key; require_known
/// rejects anything outside it.
const std::map<std::string, std::set<std::string>>& config_schema();

/// Finite-difference march vs the transform reference across a ladder of
/// reference grid sizes. x/c arrays are on the FD grid trimmed by `trim`
/// nodes per end (one-sided stencil edge rows are excluded from comparison).
struct FdVsFftResult {
    Grid fd_grid;
    std::size_t trim = 2;
    std::vector<double> x;             ///< trimmed FD nodes
    std::vector<double> fd_values;     ///< FD solution on x
    std::vector<double> seed_values;   ///< terminal condition on x
    std::vector<std::size_t> fft_sizes;
    std::vector<double> fft_steps;
    std::vector<std::vector<double>> fft_values; ///< per size, interpolated to x
    std::vector<double> max_abs_diff;            ///< per size
};

/// Real-alpha interpolation vs the transform reference, plus the baseline
/// deviation at a chosen integer anchor for the accuracy-ratio diagnostic.
struct AlphaInterpResult {
    double alpha = 0.0;
    std::array<int, 4> anchors{};
    bool extrapolation = false;
    std::vector<double> x;          ///< trimmed FD nodes
    std::vector<double> interp;     ///< interpolated solution on x
    std::vector<double> reference;  ///< transform reference on x
    std::vector<std::vector<double>> anchor_values; ///< per anchor, on x
    double dev_interp = 0.0;        ///< max |interp - reference|
    int ref_anchor = 0;
    double dev_anchor = 0.0;        ///< same deviation measured at ref_anchor
};

struct CurveResult {
    Grid grid;
    std::vector<double> seed;
    std::vector<double> values;
};

/// One refinement sweep: parameter[i] with panel count m_used[i]; change[i]
/// is max |solution_i - solution_{i-1}| (change[0] = 0 by convention).
struct SweepResult {
    std::vector<double> parameter;
    std::vector<std::size_t> m_used;
    std::vector<double> change;
    std::vector<double> x;
    std::vector<std::vector<double>> solutions;
};

struct StabilityCnRow {
    double alpha = 0.0, h = 0.0, theta = 0.0;
    double zeta = 0.0, radius = 0.0, inf_norm = 0.0;
    bool stable = false;
};

struct StabilityVgRow {
    double nu = 0.0, h = 0.0;
    double max_stable_h = 0.0; ///< 0 means unconditional
    bool admissible = false;
    double diag_ratio = 0.0;   ///< the factor's constant eigenvalue magnitude
};

struct StabilitySweepResult {
    std::vector<StabilityCnRow> cn_rows;
    std::vector<StabilityVgRow> vg_rows;
};

/// Transform quadrature of the closed-form moment integral across grid sizes.
struct TestIntegralResult {
    std::vector<std::size_t> sizes;
    std::vector<double> steps;
    std::vector<double> max_abs_error; ///< over the interior window
};

FdVsFftResult run_fd_vs_fft(const Config& cfg, unsigned threads);
AlphaInterpResult run_alpha_interp(const Config& cfg, unsigned threads);
CurveResult run_vg_case(const Config& cfg);
SweepResult run_infvar_nu_star_sweep(const Config& cfg, unsigned threads);
SweepResult run_infvar_m_sweep(const Config& cfg, unsigned threads);
StabilitySweepResult run_stability_sweep(const Config& cfg);
TestIntegralResult run_test_integral(const Config& cfg);
CurveResult run_basic_model(const Config& cfg);

/// Dispatches on experiment.type, writes the experiment's CSV files into
/// ctx.out_dir (created if needed), and returns the paths written.
std::vector<std::filesystem::path> run_experiment(const ExperimentContext& ctx);

/// The grid-step table for the reference experiment family: the FD log-grid
/// step at N=256 and the window steps h = 2 x*/N for N = 256..4096, next to
/// the rounded values they are conventionally quoted at.
void emit_table1(const std::filesystem::path& out_file);

/// Cubic Lagrange resampling from a uniform source grid onto arbitrary
/// targets (4 nearest source nodes per target, clamped at the ends).
std::vector<double> resample_cubic(const Grid& src, const std::vector<double>& src_values,
                                   const std::vector<double>& targets);

} // namespace ppide
