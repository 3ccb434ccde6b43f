#pragma once

// Small dense complex linear algebra (k <= 8 or so): vectors, matrices,
// singular values by one-sided Jacobi, inversion and the condition number
// kappa = sigma_max / sigma_min of the spectral norm.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string_view>
#include <vector>

namespace holo {

using Complex = std::complex<double>;

/// Name of the matrix norm used for every condition-number quantity.
inline constexpr std::string_view kNormName = "spectral";

/// sigma_min <= kSingularThreshold * sigma_max is treated as singular.
inline constexpr double kSingularThreshold = 1e-14;

class CVector {
public:
    CVector() = default;
    explicit CVector(std::size_t k) : entries_(k) {}
    CVector(std::initializer_list<Complex> init) : entries_(init) {}
    explicit CVector(std::vector<Complex> entries) : entries_(std::move(entries)) {}

    static CVector zeros(std::size_t k) { return CVector(k); }
    static CVector unit(std::size_t k, std::size_t i);

    std::size_t size() const { return entries_.size(); }
    Complex& operator[](std::size_t i) { return entries_[i]; }
    const Complex& operator[](std::size_t i) const { return entries_[i]; }

    auto begin() { return entries_.begin(); }
    auto end() { return entries_.end(); }
    auto begin() const { return entries_.begin(); }
    auto end() const { return entries_.end(); }

    std::span<const Complex> view() const { return entries_; }
    const std::vector<Complex>& entries() const { return entries_; }

    /// Euclidean norm.
    double norm() const;
    /// Max of the coordinate moduli.
    double max_norm() const;
    bool all_finite() const;

    CVector& operator+=(const CVector& o);
    CVector& operator-=(const CVector& o);
    CVector& operator*=(Complex s);

    friend CVector operator+(CVector a, const CVector& b) { return a += b; }
    friend CVector operator-(CVector a, const CVector& b) { return a -= b; }
    friend CVector operator*(Complex s, CVector a) { return a *= s; }
    friend CVector operator*(CVector a, Complex s) { return a *= s; }
    friend bool operator==(const CVector&, const CVector&) = default;

private:
    std::vector<Complex> entries_;
};

/// Square complex matrix, row-major.
class CMatrix {
public:
    CMatrix() = default;
    explicit CMatrix(std::size_t k) : n_(k), a_(k * k) {}
    CMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

    static CMatrix identity(std::size_t k);
    static CMatrix diagonal(std::span<const Complex> d);
    static CMatrix scalar(std::size_t k, Complex s);
    /// Throws DimensionMismatch when the rows are not square.
    static CMatrix from_rows(const std::vector<std::vector<Complex>>& rows);

    std::size_t size() const { return n_; }
    Complex& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

    CVector column(std::size_t j) const;
    void set_column(std::size_t j, const CVector& c);
    CMatrix adjoint() const;
    bool all_finite() const;
    /// Largest entry modulus.
    double max_abs() const;

    friend CMatrix operator*(const CMatrix& a, const CMatrix& b);
    friend CVector operator*(const CMatrix& a, const CVector& x);
    friend CMatrix operator+(const CMatrix& a, const CMatrix& b);
    friend CMatrix operator-(const CMatrix& a, const CMatrix& b);
    friend CMatrix operator*(Complex s, CMatrix a);
    friend bool operator==(const CMatrix&, const CMatrix&) = default;

private:
    std::size_t n_ = 0;
    std::vector<Complex> a_;
};

/// Singular values in descending order (one-sided Jacobi, Hestenes variant).
std::vector<double> singular_values(const CMatrix& a);

/// Largest singular value; 0 for the zero matrix.
double spectral_norm(const CMatrix& a);

/// Throws SingularMatrix when sigma_min <= threshold * sigma_max.
CMatrix invert(const CMatrix& a, double threshold = kSingularThreshold);

/// sigma_max / sigma_min, or +inf below the singularity threshold. Always >= 1.
double kappa(const CMatrix& a);

/// Same rule as kappa() applied to precomputed singular values.
double kappa_from_singular_values(std::span<const double> sv, double threshold = kSingularThreshold);

/// Moduli of the eigenvalues, ascending.
std::vector<double> eigen_moduli(const CMatrix& a);

} // namespace holo
