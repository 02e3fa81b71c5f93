#include <doctest.h>

#include <cstdint>
#include <vector>

#include "ppide/banded.hpp"
#include "ppide/errors.hpp"
#include "support/dense.hpp"

using namespace ppide;
namespace ts = ppide::testsupport;

namespace {

BandedMatrix random_banded(std::size_t n, int lower, int upper, std::uint64_t seed,
                           double diag_boost = 0.0) {
    BandedMatrix a(n, lower, upper);
    std::uint64_t state = seed;
    for (int d = -lower; d <= upper; ++d) {
        double* band = a.band(d);
        for (std::size_t i = a.band_begin(d); i < a.band_end(d); ++i) {
            band[i] = ts::lcg_uniform(state);
        }
    }
    if (diag_boost != 0.0) {
        double* diag = a.band(0);
        for (std::size_t i = 0; i < n; ++i) diag[i] += diag_boost;
    }
    return a;
}

std::vector<double> random_vector(std::size_t n, std::uint64_t seed) {
    std::vector<double> v(n);
    std::uint64_t state = seed;
    for (auto& x : v) x = ts::lcg_uniform(state);
    return v;
}

} // namespace

TEST_SUITE("banded") {

TEST_CASE("construction and element access") {
    BandedMatrix a(5, 1, 2);
    CHECK(a.size() == 5);
    CHECK(a.lower_bw() == 1);
    CHECK(a.upper_bw() == 2);
    a.at(0, 0) = 3.0;
    a.at(0, 2) = -1.0;
    a.at(4, 3) = 2.0;
    CHECK(a.get(0, 0) == 3.0);
    CHECK(a.get(0, 2) == -1.0);
    CHECK(a.get(4, 3) == 2.0);
    CHECK(a.get(0, 4) == 0.0);
    CHECK(a.get(4, 0) == 0.0);
    CHECK_THROWS_AS(a.at(0, 4), numeric_error);
    CHECK_THROWS_AS(a.at(4, 0), numeric_error);
}

TEST_CASE("construction rejects bad shapes") {
    CHECK_THROWS_AS(BandedMatrix(0, 0, 0), config_error);
    CHECK_THROWS_AS(BandedMatrix(4, -1, 0), config_error);
    CHECK_THROWS_AS(BandedMatrix(4, 0, 4), config_error);
}

TEST_CASE("identity, scale and add_scaled_identity") {
    BandedMatrix a = BandedMatrix::identity(4);
    for (std::size_t i = 0; i < 4; ++i) CHECK(a.get(i, i) == 1.0);
    a.scale(3.0).add_scaled_identity(-1.0);
    for (std::size_t i = 0; i < 4; ++i) CHECK(a.get(i, i) == 2.0);
}

TEST_CASE("band_matvec matches the dense product") {
    const BandedMatrix a = random_banded(32, 2, 3, 11);
    const std::vector<double> v = random_vector(32, 7);
    const std::vector<double> y = band_matvec(a, v);
    const std::vector<double> y_ref = ts::dense_matvec(ts::from_banded(a), v);
    CHECK(ts::vec_inf_diff(y, y_ref) < 1e-13);
}

TEST_CASE("band_mul matches the dense product") {
    const BandedMatrix a = random_banded(24, 1, 2, 3);
    const BandedMatrix b = random_banded(24, 2, 1, 5);
    const BandedMatrix c = band_mul(a, b);
    const ts::Dense c_ref = ts::dense_mul(ts::from_banded(a), ts::from_banded(b));
    const ts::Dense c_got = ts::from_banded(c);
    for (std::size_t i = 0; i < 24; ++i) {
        for (std::size_t j = 0; j < 24; ++j) {
            CHECK(c_got[i][j] == doctest::Approx(c_ref[i][j]).epsilon(1e-13));
        }
    }
}

TEST_CASE("band_mul clamps bandwidth near full") {
    // 4x4 with bandwidths that would exceed n-1 after the product.
    const BandedMatrix a = random_banded(4, 2, 2, 17);
    const BandedMatrix c = band_mul(a, a);
    const ts::Dense c_ref = ts::dense_mul(ts::from_banded(a), ts::from_banded(a));
    const ts::Dense c_got = ts::from_banded(c);
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
            CHECK(c_got[i][j] == doctest::Approx(c_ref[i][j]).epsilon(1e-13));
        }
    }
}

TEST_CASE("band_combine matches the dense combination") {
    const BandedMatrix a = random_banded(16, 0, 2, 23);
    const BandedMatrix b = random_banded(16, 2, 0, 29);
    const BandedMatrix c = band_combine(1.5, a, -0.5, b);
    const ts::Dense ref =
        ts::dense_add(ts::from_banded(a), ts::from_banded(b), 1.5, -0.5);
    const ts::Dense got = ts::from_banded(c);
    for (std::size_t i = 0; i < 16; ++i) {
        for (std::size_t j = 0; j < 16; ++j) {
            CHECK(got[i][j] == doctest::Approx(ref[i][j]).epsilon(1e-13));
        }
    }
}

TEST_CASE("triangular solves match the dense solver") {
    // Upper-triangular (the positive-side operator shape).
    BandedMatrix u = random_banded(32, 0, 2, 31, 0.0);
    double* diag = u.band(0);
    for (std::size_t i = 0; i < 32; ++i) diag[i] = 2.0 + 0.01 * static_cast<double>(i);
    const std::vector<double> b = random_vector(32, 13);
    const std::vector<double> x = BandedLU(u).solve(b);
    const std::vector<double> x_ref = ts::dense_solve(ts::from_banded(u), b);
    CHECK(ts::vec_inf_diff(x, x_ref) < 1e-12);

    // Lower-triangular mirror.
    BandedMatrix l = random_banded(32, 2, 0, 37, 0.0);
    double* ldiag = l.band(0);
    for (std::size_t i = 0; i < 32; ++i) ldiag[i] = -2.0 - 0.01 * static_cast<double>(i);
    const std::vector<double> y = BandedLU(l).solve(b);
    const std::vector<double> y_ref = ts::dense_solve(ts::from_banded(l), b);
    CHECK(ts::vec_inf_diff(y, y_ref) < 1e-12);
}

TEST_CASE("pivoted solve matches the dense solver") {
    const BandedMatrix a = random_banded(32, 2, 2, 41, 4.0);
    const std::vector<double> b = random_vector(32, 43);
    const std::vector<double> x = band_lu_solve(a, b);
    const std::vector<double> x_ref = ts::dense_solve(ts::from_banded(a), b);
    CHECK(ts::vec_inf_diff(x, x_ref) < 1e-11);
}

TEST_CASE("pivoted solve handles a zero leading pivot") {
    // [[0, 1], [1, 0]] swaps rows; substitution without pivoting would divide
    // by zero.
    BandedMatrix a(2, 1, 1);
    a.at(0, 1) = 1.0;
    a.at(1, 0) = 1.0;
    const std::vector<double> x = band_lu_solve(a, {3.0, 5.0});
    CHECK(x[0] == doctest::Approx(5.0));
    CHECK(x[1] == doctest::Approx(3.0));
}

TEST_CASE("singular matrices throw") {
    BandedMatrix z(3, 1, 1); // all zero
    CHECK_THROWS_AS(band_lu_solve(z, {1.0, 1.0, 1.0}), numeric_error);

    BandedMatrix tri = BandedMatrix::identity(3);
    tri.at(1, 1) = 0.0;
    CHECK_THROWS_AS(BandedLU{tri}, numeric_error);
}

TEST_CASE("solve residual stays small on well-conditioned systems") {
    const BandedMatrix a = random_banded(64, 3, 3, 53, 8.0);
    const std::vector<double> b = random_vector(64, 59);
    const std::vector<double> x = band_lu_solve(a, b);
    const std::vector<double> r = band_matvec(a, x);
    double resid = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) {
        resid = std::max(resid, std::abs(r[i] - b[i]));
    }
    CHECK(resid <= 1e-10 * ts::vec_inf_norm(b));
}

} // TEST_SUITE
