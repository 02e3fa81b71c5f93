#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "ppide/config.hpp"
#include "ppide/errors.hpp"
#include "ppide/experiments.hpp"
#include "support/dense.hpp"

using namespace ppide;
namespace ts = ppide::testsupport;
namespace fs = std::filesystem;

namespace {

Config with_type(const std::string& body) {
    return Config::parse_string(body);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    return std::string((std::istreambuf_iterator<char>(in)),
                       std::istreambuf_iterator<char>());
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag)
        : path(fs::temp_directory_path() / ("ppide_test_" + tag)) {
        fs::remove_all(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

} // namespace

TEST_SUITE("experiments") {

TEST_CASE("cubic resampling is exact on cubic data") {
    const Grid src = build_grid(0.0, 4.0, 16, 0.0, 0);
    std::vector<double> values(src.n_space);
    auto p = [](double x) { return x * x * x - x + 2.0; };
    for (std::size_t i = 0; i < src.n_space; ++i) values[i] = p(src.x(i));

    const std::vector<double> targets = {0.1, 1.234, 2.0, 3.7};
    const std::vector<double> out = resample_cubic(src, values, targets);
    for (std::size_t i = 0; i < targets.size(); ++i) {
        CHECK(out[i] == doctest::Approx(p(targets[i])).epsilon(1e-12));
    }

    CHECK_THROWS_AS(resample_cubic(src, values, {5.0}), config_error);
    CHECK_THROWS_AS(resample_cubic(src, values, {-0.5}), config_error);
}

TEST_CASE("test integral experiment reproduces the ladder") {
    const Config cfg = with_type(
        "[experiment]\ntype = test_integral\n"
        "[test_integral]\nn_list = 256, 512\n");
    const TestIntegralResult r = run_test_integral(cfg);
    REQUIRE(r.sizes == std::vector<std::size_t>{256, 512});
    CHECK(r.steps[0] == doctest::Approx(40.0 / 256.0).epsilon(1e-15));
    CHECK(r.steps[1] == doctest::Approx(40.0 / 512.0).epsilon(1e-15));
    CHECK(r.max_abs_error[0] > r.max_abs_error[1]);
    CHECK(r.max_abs_error[0] / r.max_abs_error[1] >= 1.4);

    // Determinism: identical reruns give identical numbers.
    const TestIntegralResult again = run_test_integral(cfg);
    CHECK(r.max_abs_error == again.max_abs_error);
}

TEST_CASE("zero time steps echo the terminal condition") {
    const Config cfg = with_type(
        "[experiment]\ntype = fd_vs_fft\n"
        "[fd_grid]\nn_time = 0\nn_space = 64\n"
        "[fft_grid]\nn_list = 256\n");
    const FdVsFftResult r = run_fd_vs_fft(cfg, 1);
    REQUIRE(r.fd_values.size() == r.seed_values.size());
    CHECK(ts::vec_inf_diff(r.fd_values, r.seed_values) == 0.0);
}

TEST_CASE("fd grid trims the stencil edge rows") {
    const Config cfg = with_type(
        "[experiment]\ntype = fd_vs_fft\n"
        "[fd_grid]\nn_space = 64\nn_time = 5\n"
        "[fft_grid]\nn_list = 256\n");
    const FdVsFftResult r = run_fd_vs_fft(cfg, 1);
    CHECK(r.trim == 2);
    CHECK(r.x.size() == 64 - 4);
    CHECK(r.x.front() == doctest::Approx(r.fd_grid.x(2)).epsilon(1e-14));
    REQUIRE(r.fft_values.size() == 1);
    CHECK(r.fft_values[0].size() == r.x.size());
    CHECK(r.max_abs_diff.size() == 1);
}

TEST_CASE("experiment dispatch writes deterministic files") {
    const std::string body =
        "[experiment]\ntype = fd_vs_fft\n"
        "[fd_grid]\nn_space = 64\nn_time = 5\n"
        "[fft_grid]\nn_list = 256, 512\n";

    TempDir dir_a("exp_a");
    TempDir dir_b("exp_b");

    ExperimentContext ctx_a{with_type(body), dir_a.path, 1};
    ExperimentContext ctx_b{with_type(body), dir_b.path, 3};
    const std::vector<fs::path> files_a = run_experiment(ctx_a);
    const std::vector<fs::path> files_b = run_experiment(ctx_b);
    REQUIRE(files_a.size() == files_b.size());
    REQUIRE(!files_a.empty());

    for (std::size_t i = 0; i < files_a.size(); ++i) {
        CHECK(files_a[i].filename() == files_b[i].filename());
        const std::string bytes_a = slurp(files_a[i]);
        CHECK(bytes_a == slurp(files_b[i]));
        // Metadata header carries the config hash; data lines use '\n' only.
        CHECK(bytes_a.find("# config-hash ") != std::string::npos);
        CHECK(bytes_a.find('\r') == std::string::npos);
    }
}

TEST_CASE("dispatch rejects unknown experiment types and keys") {
    TempDir dir("exp_bad");
    ExperimentContext unknown_type{
        with_type("[experiment]\ntype = warp_drive\n"), dir.path, 1};
    CHECK_THROWS_AS(run_experiment(unknown_type), config_error);

    ExperimentContext unknown_key{
        with_type("[experiment]\ntype = test_integral\n[model]\npemdas = 1\n"),
        dir.path, 1};
    CHECK_THROWS_AS(run_experiment(unknown_key), config_error);
}

TEST_CASE("stability sweep rows") {
    const Config cfg = with_type(
        "[experiment]\ntype = stability_sweep\n"
        "[stability]\nn = 16\nh_list = 0.1\ntheta_list = 0.01\n"
        "alpha_list = -1, -2\nvg_nu_list = 0.5, 1.5\n");
    const StabilitySweepResult r = run_stability_sweep(cfg);
    REQUIRE(r.cn_rows.size() == 2);
    for (const auto& row : r.cn_rows) {
        CHECK(row.stable);
        CHECK(row.radius <= 1.0 + 1e-12);
        CHECK(row.zeta < 0.0);
    }
    REQUIRE(r.vg_rows.size() == 2);
    CHECK(r.vg_rows[0].max_stable_h == doctest::Approx(3.0));
    CHECK(r.vg_rows[1].max_stable_h == 0.0); // unconditional
    CHECK(r.vg_rows[1].admissible);
    CHECK(r.vg_rows[1].diag_ratio < 1.0);
}

TEST_CASE("table emission quotes the conventional values") {
    TempDir dir("table");
    const fs::path out = dir.path / "table.csv";
    fs::create_directories(dir.path);
    emit_table1(out);
    const std::string text = slurp(out);
    CHECK(text.find("0.096231597040525613") != std::string::npos);
    CHECK(text.find("0.096") != std::string::npos);
    CHECK(text.find("0.15625") != std::string::npos);
    CHECK(text.find("0.1563") != std::string::npos);
    CHECK(text.find("0.00977") != std::string::npos);
}

TEST_CASE("vg case runs on the default market") {
    const Config cfg = with_type(
        "[experiment]\ntype = vg_case\n"
        "[model]\nalpha_plus = 0\n"
        "[fd_grid]\nn_space = 64\nn_time = 5\n");
    const CurveResult r = run_vg_case(cfg);
    REQUIRE(r.values.size() == 64);
    for (double v : r.values) {
        CHECK(std::isfinite(v));
        CHECK(v >= -1e-9);
    }
}

} // TEST_SUITE
