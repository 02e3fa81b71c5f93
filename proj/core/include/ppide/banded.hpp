#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace ppide {

/// Square banded matrix stored by diagonals. Diagonal d in [-lower_bw, upper_bw]
/// holds the entries A(i, i+d); storage is band-major and contiguous so matvec
/// and band products stream along diagonals.
class BandedMatrix {
public:
    BandedMatrix() = default;
    BandedMatrix(std::size_t n, int lower_bw, int upper_bw);

    static BandedMatrix identity(std::size_t n);

    std::size_t size() const { return n_; }
    int lower_bw() const { return lower_; }
    int upper_bw() const { return upper_; }

    /// Row range [band_begin, band_end) on which diagonal d has entries.
    std::size_t band_begin(int d) const { return d < 0 ? static_cast<std::size_t>(-d) : 0; }
    std::size_t band_end(int d) const {
        return d > 0 ? n_ - static_cast<std::size_t>(d) : n_;
    }

    /// Pointer to diagonal d, indexed by row i (valid on [band_begin, band_end)).
    double* band(int d) { return data_.data() + band_index(d) * n_; }
    const double* band(int d) const { return data_.data() + band_index(d) * n_; }

    /// Checked element access inside the band; throws outside it.
    double& at(std::size_t i, std::size_t j);
    /// Unchecked read; returns 0 outside the band.
    double get(std::size_t i, std::size_t j) const;

    BandedMatrix& scale(double s);
    /// A += s I
    BandedMatrix& add_scaled_identity(double s);

private:
    std::size_t band_index(int d) const { return static_cast<std::size_t>(d + lower_); }

    std::size_t n_ = 0;
    int lower_ = 0;
    int upper_ = 0;
    std::vector<double> data_;
};

/// y = A v. v.size() must equal A.size().
std::vector<double> band_matvec(const BandedMatrix& a, std::span<const double> v);

/// C = A B. Bandwidths add (clamped to n-1).
BandedMatrix band_mul(const BandedMatrix& a, const BandedMatrix& b);

/// C = ca A + cb B with the union band profile.
BandedMatrix band_combine(double ca, const BandedMatrix& a, double cb, const BandedMatrix& b);

/// LU factorization of a banded matrix. Triangular inputs are solved by pure
/// substitution (no pivoting: their pivots are the fixed diagonal); general
/// inputs use partial pivoting with the usual lower_bw+upper_bw fill. A zero
/// pivot throws numeric_error; there is no perturbation fallback.
class BandedLU {
public:
    explicit BandedLU(const BandedMatrix& a);

    std::size_t size() const { return n_; }

    void solve_in_place(std::span<double> rhs) const;
    std::vector<double> solve(std::vector<double> rhs) const;

private:
    enum class Mode { lower_tri, upper_tri, pivoted };

    std::size_t n_ = 0;
    int kl_ = 0;
    int ku_ = 0;
    Mode mode_ = Mode::pivoted;
    BandedMatrix tri_;               // triangular path: the matrix itself
    std::vector<double> ab_;         // pivoted path: column-major band storage
    std::vector<std::size_t> piv_;
    std::size_t ld_ = 0;

    double& ab(std::size_t i, std::size_t j) {
        return ab_[j * ld_ + (static_cast<std::size_t>(kl_ + ku_) + i - j)];
    }
    double ab(std::size_t i, std::size_t j) const {
        return ab_[j * ld_ + (static_cast<std::size_t>(kl_ + ku_) + i - j)];
    }
};

/// One-shot solve A x = rhs. On well-conditioned inputs the residual satisfies
/// ||A x - rhs||_inf <= 1e-10 ||rhs||_inf (verified in the test suite).
std::vector<double> band_lu_solve(const BandedMatrix& a, std::vector<double> rhs);

} // namespace ppide
