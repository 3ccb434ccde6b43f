#include "holo/algebra.hpp"

#include "holo/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>

namespace holo {

CVector CVector::unit(std::size_t k, std::size_t i) {
    CVector e(k);
    e[i] = 1.0;
    return e;
}

double CVector::norm() const {
    // scaled accumulation, avoids overflow for large coordinates
    double scale = max_norm();
    if (scale == 0.0 || !std::isfinite(scale)) return scale;
    double s = 0.0;
    for (const auto& z : entries_) s += std::norm(z / scale);
    return scale * std::sqrt(s);
}

double CVector::max_norm() const {
    double m = 0.0;
    for (const auto& z : entries_) m = std::max(m, std::abs(z));
    return m;
}

bool CVector::all_finite() const {
    return std::all_of(entries_.begin(), entries_.end(),
                       [](const Complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

CVector& CVector::operator+=(const CVector& o) {
    if (o.size() != size()) throw DimensionMismatch(size(), o.size(), "vector addition");
    for (std::size_t i = 0; i < size(); ++i) entries_[i] += o[i];
    return *this;
}

CVector& CVector::operator-=(const CVector& o) {
    if (o.size() != size()) throw DimensionMismatch(size(), o.size(), "vector subtraction");
    for (std::size_t i = 0; i < size(); ++i) entries_[i] -= o[i];
    return *this;
}

CVector& CVector::operator*=(Complex s) {
    for (auto& z : entries_) z *= s;
    return *this;
}

CMatrix::CMatrix(std::initializer_list<std::initializer_list<Complex>> rows) : n_(rows.size()), a_() {
    a_.reserve(n_ * n_);
    for (const auto& r : rows) {
        if (r.size() != n_) throw DimensionMismatch(n_, r.size(), "matrix row");
        a_.insert(a_.end(), r.begin(), r.end());
    }
}

CMatrix CMatrix::identity(std::size_t k) { return scalar(k, 1.0); }

CMatrix CMatrix::scalar(std::size_t k, Complex s) {
    CMatrix m(k);
    for (std::size_t i = 0; i < k; ++i) m(i, i) = s;
    return m;
}

CMatrix CMatrix::diagonal(std::span<const Complex> d) {
    CMatrix m(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

CMatrix CMatrix::from_rows(const std::vector<std::vector<Complex>>& rows) {
    CMatrix m(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows.size()) throw DimensionMismatch(rows.size(), rows[i].size(), "matrix row");
        for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = rows[i][j];
    }
    return m;
}

CVector CMatrix::column(std::size_t j) const {
    CVector c(n_);
    for (std::size_t i = 0; i < n_; ++i) c[i] = (*this)(i, j);
    return c;
}

void CMatrix::set_column(std::size_t j, const CVector& c) {
    if (c.size() != n_) throw DimensionMismatch(n_, c.size(), "set_column");
    for (std::size_t i = 0; i < n_; ++i) (*this)(i, j) = c[i];
}

CMatrix CMatrix::adjoint() const {
    CMatrix h(n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) h(j, i) = std::conj((*this)(i, j));
    return h;
}

bool CMatrix::all_finite() const {
    return std::all_of(a_.begin(), a_.end(),
                       [](const Complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

double CMatrix::max_abs() const {
    double m = 0.0;
    for (const auto& z : a_) m = std::max(m, std::abs(z));
    return m;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
    if (a.size() != b.size()) throw DimensionMismatch(a.size(), b.size(), "matrix product");
    const std::size_t n = a.size();
    CMatrix c(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < n; ++l) {
            const Complex ail = a(i, l);
            for (std::size_t j = 0; j < n; ++j) c(i, j) += ail * b(l, j);
        }
    return c;
}

CVector operator*(const CMatrix& a, const CVector& x) {
    if (a.size() != x.size()) throw DimensionMismatch(a.size(), x.size(), "matrix-vector product");
    CVector y(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        Complex s = 0.0;
        for (std::size_t j = 0; j < a.size(); ++j) s += a(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

CMatrix operator+(const CMatrix& a, const CMatrix& b) {
    if (a.size() != b.size()) throw DimensionMismatch(a.size(), b.size(), "matrix sum");
    CMatrix c = a;
    for (std::size_t i = 0; i < a.a_.size(); ++i) c.a_[i] += b.a_[i];
    return c;
}

CMatrix operator-(const CMatrix& a, const CMatrix& b) {
    if (a.size() != b.size()) throw DimensionMismatch(a.size(), b.size(), "matrix difference");
    CMatrix c = a;
    for (std::size_t i = 0; i < a.a_.size(); ++i) c.a_[i] -= b.a_[i];
    return c;
}

CMatrix operator*(Complex s, CMatrix a) {
    for (auto& z : a.a_) z *= s;
    return a;
}

std::vector<double> singular_values(const CMatrix& a) {
    const std::size_t n = a.size();
    // columns of the working copy are rotated until mutually orthogonal;
    // their norms are then the singular values
    std::vector<Complex> w(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) w[j * n + i] = a(i, j);
    auto col = [&](std::size_t j) { return w.data() + j * n; };

    constexpr double eps = std::numeric_limits<double>::epsilon();
    constexpr int max_sweeps = 80;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                Complex* cp = col(p);
                Complex* cq = col(q);
                double alpha = 0.0, beta = 0.0;
                Complex gamma = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    alpha += std::norm(cp[i]);
                    beta += std::norm(cq[i]);
                    gamma += std::conj(cp[i]) * cq[i];
                }
                const double g = std::abs(gamma);
                if (g == 0.0 || g <= eps * std::sqrt(alpha * beta)) continue;
                rotated = true;
                // phase-align column q so the inner product is real and positive
                const Complex phase = std::conj(gamma) / g;
                const double zeta = (beta - alpha) / (2.0 * g);
                const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                for (std::size_t i = 0; i < n; ++i) {
                    const Complex x = cp[i];
                    const Complex y = cq[i] * phase;
                    cp[i] = c * x - s * y;
                    cq[i] = s * x + c * y;
                }
            }
        }
        if (!rotated) break;
    }

    std::vector<double> sv(n);
    for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += std::norm(col(j)[i]);
        sv[j] = std::sqrt(s);
    }
    std::sort(sv.begin(), sv.end(), std::greater<>());
    return sv;
}

double spectral_norm(const CMatrix& a) {
    if (a.size() == 0) return 0.0;
    return singular_values(a).front();
}

double kappa_from_singular_values(std::span<const double> sv, double threshold) {
    if (sv.empty()) return 1.0;
    const double smax = sv.front();
    const double smin = sv.back();
    if (!(smax > 0.0) || !std::isfinite(smax) || smin <= threshold * smax) {
        return std::numeric_limits<double>::infinity();
    }
    return std::max(1.0, smax / smin);
}

double kappa(const CMatrix& a) {
    const auto sv = singular_values(a);
    return kappa_from_singular_values(sv);
}

CMatrix invert(const CMatrix& a, double threshold) {
    const std::size_t n = a.size();
    if (std::isinf(kappa_from_singular_values(singular_values(a), threshold))) {
        throw SingularMatrix("matrix is singular to working precision");
    }
    // Gauss-Jordan with partial pivoting
    CMatrix m = a;
    CMatrix inv = CMatrix::identity(n);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (std::abs(m(r, c)) > std::abs(m(piv, c))) piv = r;
        if (piv != c) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(m(c, j), m(piv, j));
                std::swap(inv(c, j), inv(piv, j));
            }
        }
        const Complex d = m(c, c);
        for (std::size_t j = 0; j < n; ++j) {
            m(c, j) /= d;
            inv(c, j) /= d;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c) continue;
            const Complex f = m(r, c);
            if (f == Complex(0.0)) continue;
            for (std::size_t j = 0; j < n; ++j) {
                m(r, j) -= f * m(c, j);
                inv(r, j) -= f * inv(c, j);
            }
        }
    }
    return inv;
}

std::vector<double> eigen_moduli(const CMatrix& a) {
    const auto n = static_cast<Eigen::Index>(a.size());
    Eigen::MatrixXcd m(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) m(i, j) = a(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(m, /*computeEigenvectors=*/false);
    std::vector<double> mod(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) mod[static_cast<std::size_t>(i)] = std::abs(solver.eigenvalues()(i));
    std::sort(mod.begin(), mod.end());
    return mod;
}

} // namespace holo
