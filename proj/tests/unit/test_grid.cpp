#include <doctest.h>

#include "ppide/errors.hpp"
#include "ppide/grid.hpp"

using namespace ppide;

TEST_SUITE("grid") {

TEST_CASE("build_grid computes steps and nodes") {
    const Grid g = build_grid(-20.0, 20.0, 256, 0.5, 50);
    CHECK(g.h == doctest::Approx(0.15625).epsilon(1e-15));
    CHECK(g.theta == doctest::Approx(0.01).epsilon(1e-15));
    CHECK(g.x(0) == -20.0);
    // The right endpoint is not a node: the last node is x_max - h.
    CHECK(g.x(g.n_space - 1) == doctest::Approx(20.0 - g.h).epsilon(1e-15));
}

TEST_CASE("zero time steps mean no evolution") {
    const Grid g = build_grid(0.0, 1.0, 8, 1.0, 0);
    CHECK(g.theta == 0.0);
    CHECK(g.n_time == 0);
}

TEST_CASE("build_grid rejects bad bounds") {
    CHECK_THROWS_AS(build_grid(1.0, 1.0, 8, 1.0, 1), config_error);
    CHECK_THROWS_AS(build_grid(2.0, 1.0, 8, 1.0, 1), config_error);
    CHECK_THROWS_AS(build_grid(0.0, 1.0, 2, 1.0, 1), config_error);
    CHECK_THROWS_AS(build_grid(0.0, 1.0, 8, -1.0, 1), config_error);
}

TEST_CASE("extend_fft_domain doubles the window") {
    const Grid g = build_grid(-20.0, 20.0, 256, 0.5, 50);
    const ExtendedGrid ext = extend_fft_domain(g);
    CHECK(ext.window_size == 256);
    CHECK(ext.window_offset == 127);
    CHECK(ext.padded.n_space == 512);
    CHECK(ext.padded.h == g.h);
    CHECK(ext.padded.theta == g.theta);
    CHECK(ext.padded.x_min == doctest::Approx(-39.84375).epsilon(1e-15));
}

TEST_CASE("padded nodes coincide with window nodes") {
    const Grid g = build_grid(-20.0, 20.0, 256, 0.5, 50);
    const ExtendedGrid ext = extend_fft_domain(g);
    for (std::size_t i : {std::size_t{0}, std::size_t{1}, std::size_t{100},
                          std::size_t{255}}) {
        CHECK(ext.padded.x(i + ext.window_offset) ==
              doctest::Approx(g.x(i)).epsilon(1e-14));
    }
}

TEST_CASE("extend_fft_domain rejects odd or tiny windows") {
    CHECK_THROWS_AS(extend_fft_domain(build_grid(-1.0, 1.0, 7, 1.0, 1)),
                    config_error);
    Grid tiny;
    tiny.x_min = -1.0;
    tiny.x_max = 1.0;
    tiny.n_space = 2;
    tiny.h = 1.0;
    CHECK_THROWS_AS(extend_fft_domain(tiny), config_error);
}

} // TEST_SUITE
