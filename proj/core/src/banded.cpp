#include "ppide/banded.hpp"
#include "ppide/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ppide {

BandedMatrix::BandedMatrix(std::size_t n, int lower_bw, int upper_bw)
    : n_(n), lower_(lower_bw), upper_(upper_bw) {
    if (n == 0) throw config_error("BandedMatrix: n must be > 0");
    if (lower_bw < 0 || upper_bw < 0)
        throw config_error("BandedMatrix: bandwidths must be >= 0");
    if (static_cast<std::size_t>(lower_bw) >= n || static_cast<std::size_t>(upper_bw) >= n)
        throw config_error("BandedMatrix: bandwidth must be < n");
    data_.assign(static_cast<std::size_t>(lower_ + upper_ + 1) * n_, 0.0);
}

BandedMatrix BandedMatrix::identity(std::size_t n) {
    BandedMatrix m(n, 0, 0);
    std::fill_n(m.band(0), n, 1.0);
    return m;
}

double& BandedMatrix::at(std::size_t i, std::size_t j) {
    const long d = static_cast<long>(j) - static_cast<long>(i);
    if (i >= n_ || j >= n_ || d < -lower_ || d > upper_)
        throw numeric_error("BandedMatrix::at: index outside the band");
    return band(static_cast<int>(d))[i];
}

double BandedMatrix::get(std::size_t i, std::size_t j) const {
    if (i >= n_ || j >= n_) return 0.0;
    const long d = static_cast<long>(j) - static_cast<long>(i);
    if (d < -lower_ || d > upper_) return 0.0;
    return band(static_cast<int>(d))[i];
}

BandedMatrix& BandedMatrix::scale(double s) {
    for (double& v : data_) v *= s;
    return *this;
}

BandedMatrix& BandedMatrix::add_scaled_identity(double s) {
    double* d0 = band(0);
    for (std::size_t i = 0; i < n_; ++i) d0[i] += s;
    return *this;
}

std::vector<double> band_matvec(const BandedMatrix& a, std::span<const double> v) {
    if (v.size() != a.size()) throw numeric_error("band_matvec: size mismatch");
    std::vector<double> y(a.size(), 0.0);
    for (int d = -a.lower_bw(); d <= a.upper_bw(); ++d) {
        const double* bd = a.band(d);
        const std::size_t lo = a.band_begin(d), hi = a.band_end(d);
        for (std::size_t i = lo; i < hi; ++i)
            y[i] += bd[i] * v[i + static_cast<std::size_t>(d)];
    }
    return y;
}

BandedMatrix band_mul(const BandedMatrix& a, const BandedMatrix& b) {
    if (a.size() != b.size()) throw numeric_error("band_mul: size mismatch");
    const std::size_t n = a.size();
    const int max_bw = static_cast<int>(n) - 1;
    const int pl = std::min(a.lower_bw() + b.lower_bw(), max_bw);
    const int pu = std::min(a.upper_bw() + b.upper_bw(), max_bw);
    BandedMatrix c(n, pl, pu);
    for (int da = -a.lower_bw(); da <= a.upper_bw(); ++da) {
        const double* ba = a.band(da);
        for (int db = -b.lower_bw(); db <= b.upper_bw(); ++db) {
            const int dc = da + db;
            if (dc < -pl || dc > pu) continue;
            const double* bb = b.band(db);
            double* bc = c.band(dc);
            // Need i, i+da, i+da+db all in [0, n).
            const long lo = std::max({0L, -static_cast<long>(da), -static_cast<long>(dc)});
            const long hi = std::min({static_cast<long>(n), static_cast<long>(n) - da,
                                      static_cast<long>(n) - dc});
            for (long i = lo; i < hi; ++i)
                bc[i] += ba[i] * bb[i + da];
        }
    }
    return c;
}

BandedMatrix band_combine(double ca, const BandedMatrix& a, double cb, const BandedMatrix& b) {
    if (a.size() != b.size()) throw numeric_error("band_combine: size mismatch");
    BandedMatrix c(a.size(), std::max(a.lower_bw(), b.lower_bw()),
                   std::max(a.upper_bw(), b.upper_bw()));
    for (int d = -a.lower_bw(); d <= a.upper_bw(); ++d) {
        const double* src = a.band(d);
        double* dst = c.band(d);
        for (std::size_t i = a.band_begin(d); i < a.band_end(d); ++i) dst[i] += ca * src[i];
    }
    for (int d = -b.lower_bw(); d <= b.upper_bw(); ++d) {
        const double* src = b.band(d);
        double* dst = c.band(d);
        for (std::size_t i = b.band_begin(d); i < b.band_end(d); ++i) dst[i] += cb * src[i];
    }
    return c;
}

BandedLU::BandedLU(const BandedMatrix& a)
    : n_(a.size()), kl_(a.lower_bw()), ku_(a.upper_bw()) {
    if (kl_ == 0 || ku_ == 0) {
        mode_ = kl_ == 0 ? Mode::upper_tri : Mode::lower_tri;
        tri_ = a;
        const double* diag = tri_.band(0);
        for (std::size_t i = 0; i < n_; ++i)
            if (diag[i] == 0.0)
                throw numeric_error("BandedLU: singular triangular matrix (zero diagonal at row " +
                                    std::to_string(i) + ")");
        return;
    }
    mode_ = Mode::pivoted;
    const int kfill = kl_ + ku_;
    ld_ = static_cast<std::size_t>(kl_ + kfill + 1);
    ab_.assign(ld_ * n_, 0.0);
    piv_.assign(n_, 0);
    for (int d = -kl_; d <= ku_; ++d) {
        const double* bd = a.band(d);
        for (std::size_t i = a.band_begin(d); i < a.band_end(d); ++i)
            ab(i, i + static_cast<std::size_t>(d)) = bd[i];
    }
    for (std::size_t k = 0; k < n_; ++k) {
        const std::size_t iend = std::min(n_ - 1, k + static_cast<std::size_t>(kl_));
        std::size_t pr = k;
        double pmax = std::abs(ab(k, k));
        for (std::size_t i = k + 1; i <= iend; ++i) {
            const double v = std::abs(ab(i, k));
            if (v > pmax) {
                pmax = v;
                pr = i;
            }
        }
        if (pmax == 0.0)
            throw numeric_error("BandedLU: zero pivot at column " + std::to_string(k));
        piv_[k] = pr;
        const std::size_t jend = std::min(n_ - 1, k + static_cast<std::size_t>(kfill));
        if (pr != k)
            for (std::size_t j = k; j <= jend; ++j) std::swap(ab(k, j), ab(pr, j));
        const double pivot = ab(k, k);
        for (std::size_t i = k + 1; i <= iend; ++i) {
            const double m = ab(i, k) / pivot;
            ab(i, k) = m;
            if (m != 0.0)
                for (std::size_t j = k + 1; j <= jend; ++j) ab(i, j) -= m * ab(k, j);
        }
    }
}

void BandedLU::solve_in_place(std::span<double> rhs) const {
    if (rhs.size() != n_) throw numeric_error("BandedLU::solve: size mismatch");
    if (mode_ == Mode::lower_tri) {
        for (std::size_t i = 0; i < n_; ++i) {
            double s = rhs[i];
            const int lo = static_cast<int>(std::min<std::size_t>(kl_, i));
            for (int d = 1; d <= lo; ++d)
                s -= tri_.band(-d)[i] * rhs[i - static_cast<std::size_t>(d)];
            rhs[i] = s / tri_.band(0)[i];
        }
        return;
    }
    if (mode_ == Mode::upper_tri) {
        for (std::size_t ii = n_; ii-- > 0;) {
            double s = rhs[ii];
            const int hi = static_cast<int>(std::min<std::size_t>(ku_, n_ - 1 - ii));
            for (int d = 1; d <= hi; ++d)
                s -= tri_.band(d)[ii] * rhs[ii + static_cast<std::size_t>(d)];
            rhs[ii] = s / tri_.band(0)[ii];
        }
        return;
    }
    const int kfill = kl_ + ku_;
    for (std::size_t k = 0; k < n_; ++k) {
        if (piv_[k] != k) std::swap(rhs[k], rhs[piv_[k]]);
        const std::size_t iend = std::min(n_ - 1, k + static_cast<std::size_t>(kl_));
        const double bk = rhs[k];
        if (bk != 0.0)
            for (std::size_t i = k + 1; i <= iend; ++i) rhs[i] -= ab(i, k) * bk;
    }
    for (std::size_t kk = n_; kk-- > 0;) {
        double s = rhs[kk];
        const std::size_t jend = std::min(n_ - 1, kk + static_cast<std::size_t>(kfill));
        for (std::size_t j = kk + 1; j <= jend; ++j) s -= ab(kk, j) * rhs[j];
        rhs[kk] = s / ab(kk, kk);
    }
}

std::vector<double> BandedLU::solve(std::vector<double> rhs) const {
    solve_in_place(rhs);
    return rhs;
}

std::vector<double> band_lu_solve(const BandedMatrix& a, std::vector<double> rhs) {
    return BandedLU(a).solve(std::move(rhs));
}

} // namespace ppide
