#include "ppide/fft_ref.hpp"

#include "ppide/errors.hpp"
#include "ppide/special.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace ppide {

namespace {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::vector<std::complex<double>> circulant_spectrum(const std::vector<double>& first_row) {
    const std::size_t len = first_row.size();
    // The transform diagonalizes the circulant through its first column,
    // which is the first row read backwards.
    std::vector<std::complex<double>> col(len);
    col[0] = first_row[0];
    for (std::size_t m = 1; m < len; ++m) {
        col[m] = first_row[len - m];
    }
    fft_radix2(col, false);
    return col;
}

} // namespace

ToeplitzKernel build_toeplitz_kernel(const ExtendedGrid& g, double lambda, double nu,
                                     double alpha, JumpSide side, OriginConvention origin) {
    if (!(lambda > 0.0) || !(nu > 0.0)) {
        throw config_error("kernel requires lambda > 0 and nu > 0");
    }
    if (!(alpha < 0.0)) {
        throw config_error("the quadrature kernel requires alpha < 0 (finite activity)");
    }
    const std::size_t n = g.padded.n_space;
    const double h = g.padded.h;
    if (!is_power_of_two(n)) {
        throw config_error("padded grid size must be a power of two for the transform");
    }

    ToeplitzKernel k;
    k.n = n;
    k.h = h;
    k.side = side;
    k.origin = origin;
    k.first_row.assign(2 * n, 0.0);

    const double w0 = origin == OriginConvention::trapezoid ? 0.5 * h : h;
    const double f0 = alpha == -1.0 ? lambda : 0.0;
    k.first_row[0] = w0 * f0;
    for (std::size_t j = 1; j < n; ++j) {
        const double y = static_cast<double>(j) * h;
        const double f = lambda * std::exp(-nu * y) / std::pow(y, 1.0 + alpha);
        if (side == JumpSide::positive) {
            k.first_row[j] = h * f;
        } else {
            k.first_row[2 * n - j] = h * f;
        }
    }
    k.spectrum = circulant_spectrum(k.first_row);
    return k;
}

void fft_radix2(std::vector<std::complex<double>>& a, bool inverse) {
    const std::size_t n = a.size();
    if (!is_power_of_two(n)) {
        throw numeric_error("fft size must be a power of two");
    }
    // Bit-reversal permutation.
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) {
            j ^= bit;
        }
        j ^= bit;
        if (i < j) {
            std::swap(a[i], a[j]);
        }
    }
    const double pi = std::acos(-1.0);
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double angle = (inverse ? 2.0 : -2.0) * pi / static_cast<double>(len);
        const std::complex<double> w_len(std::cos(angle), std::sin(angle));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t j = 0; j < len / 2; ++j) {
                const std::complex<double> u = a[i + j];
                const std::complex<double> v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
                w *= w_len;
            }
        }
    }
    if (inverse) {
        const double scale = 1.0 / static_cast<double>(n);
        for (auto& z : a) {
            z *= scale;
        }
    }
}

std::vector<double> fft_jump_integral(const ToeplitzKernel& kernel, std::span<const double> c) {
    if (c.size() != kernel.n) {
        throw config_error("price vector does not match the kernel's padded grid");
    }
    const std::size_t len = 2 * kernel.n;
    std::vector<std::complex<double>> x(len);
    for (std::size_t i = 0; i < kernel.n; ++i) {
        x[i] = c[i];
    }
    fft_radix2(x, false);
    for (std::size_t i = 0; i < len; ++i) {
        x[i] *= kernel.spectrum[i];
    }
    fft_radix2(x, true);
    std::vector<double> out(kernel.n);
    for (std::size_t i = 0; i < kernel.n; ++i) {
        out[i] = x[i].real();
    }
    return out;
}

std::vector<double> euler_march(const ToeplitzKernel& kernel, std::vector<double> c0,
                                double theta, std::size_t n_time, bool compensated,
                                double comp_value) {
    if (c0.size() != kernel.n) {
        throw config_error("initial data does not match the kernel's padded grid");
    }
    for (std::size_t k = 0; k < n_time; ++k) {
        const std::vector<double> v = fft_jump_integral(kernel, c0);
        bool finite = true;
        for (std::size_t i = 0; i < kernel.n; ++i) {
            c0[i] += theta * (v[i] - (compensated ? comp_value * c0[i] : 0.0));
            finite = finite && std::isfinite(c0[i]);
        }
        if (!finite) {
            throw numeric_error("euler march produced non-finite values at step " +
                                std::to_string(k + 1));
        }
    }
    return c0;
}

double test_integral_exact(double x, double nu, double alpha) {
    if (!(alpha < 0.0)) {
        throw config_error("test integral requires alpha < 0");
    }
    if (!(nu > 0.0)) {
        throw config_error("test integral requires nu > 0");
    }
    return (x * nu - alpha) * std::pow(nu, alpha - 1.0) * gamma_fn(-alpha);
}

std::vector<double> test_integral_fft(const ExtendedGrid& g, double nu, double alpha,
                                      OriginConvention origin) {
    const ToeplitzKernel kernel =
        build_toeplitz_kernel(g, 1.0, nu, alpha, JumpSide::positive, origin);
    std::vector<double> c(g.padded.n_space);
    for (std::size_t i = 0; i < c.size(); ++i) {
        c[i] = g.padded.x(i);
    }
    return fft_jump_integral(kernel, c);
}

} // namespace ppide
