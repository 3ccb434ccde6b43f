#pragma once

// Random matrices, points and maps shared by the unit and acceptance tests.

#include "holo/algebra.hpp"
#include "holo/mapkit.hpp"

#include <random>
#include <vector>

namespace holo::testing {

inline Complex random_complex(std::mt19937_64& eng, double scale = 1.0) {
    std::normal_distribution<double> g(0.0, scale);
    return {g(eng), g(eng)};
}

inline CMatrix random_matrix(std::mt19937_64& eng, std::size_t k, double scale = 1.0) {
    CMatrix a(k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) a(i, j) = random_complex(eng, scale);
    return a;
}

/// Haar-ish unitary from Gram-Schmidt on a Gaussian matrix.
inline CMatrix random_unitary(std::mt19937_64& eng, std::size_t k) {
    CMatrix a = random_matrix(eng, k);
    for (std::size_t j = 0; j < k; ++j) {
        CVector c = a.column(j);
        for (std::size_t p = 0; p < j; ++p) {
            const CVector q = a.column(p);
            Complex dot = 0.0;
            for (std::size_t i = 0; i < k; ++i) dot += std::conj(q[i]) * c[i];
            c -= dot * q;
        }
        c *= 1.0 / c.norm();
        a.set_column(j, c);
    }
    return a;
}

/// U diag(s) V* with prescribed singular values.
inline CMatrix matrix_with_singular_values(std::mt19937_64& eng, const std::vector<double>& s) {
    std::vector<Complex> d(s.begin(), s.end());
    return random_unitary(eng, s.size()) * CMatrix::diagonal(d) * random_unitary(eng, s.size()).adjoint();
}

/// Uniform point of the open ball of the given radius in C^k.
inline CVector random_ball_point(std::mt19937_64& eng, std::size_t k, double radius) {
    std::normal_distribution<double> g;
    std::uniform_real_distribution<double> u(0.0, 1.0);
    CVector z(k);
    for (auto& x : z) x = {g(eng), g(eng)};
    const double r = radius * std::pow(u(eng), 1.0 / (2.0 * static_cast<double>(k)));
    z *= r / z.norm();
    return z;
}

/// One instance of each built-in family at k = 2.
inline std::vector<MapExpr> builtin_instances() {
    return {identity(2),
            linear(CMatrix{{2.0, Complex(0.0, 1.0)}, {0.5, -1.0}}),
            translation(CVector{0.3, Complex(-0.2, 0.1)}),
            henon(0.5),
            harris(3),
            duren_rudin(0.7),
            exp_coord(0.1, 2),
            exp_coord(Complex(1.0, 0.5), 2),
            parse("(z1^2 + 0.5*z2, z1 - (0.25+1i)*z2^3)")};
}

/// Random expression tree of depth <= depth over k = 2, kept mild so values stay moderate.
inline MapExpr random_composition(std::mt19937_64& eng, int depth) {
    std::uniform_int_distribution<int> pick(0, 5);
    std::uniform_real_distribution<double> u(-0.6, 0.6);
    if (depth <= 1) {
        switch (pick(eng)) {
        case 0: return henon(Complex(u(eng), u(eng)));
        case 1: return exp_coord(Complex(u(eng), u(eng)), 2);
        case 2: return harris(1 + static_cast<int>(std::abs(u(eng)) * 5));
        case 3: return duren_rudin(1.0 + std::abs(u(eng)));
        case 4: return linear(random_matrix(eng, 2, 0.7));
        default: return translation(CVector{Complex(u(eng), u(eng)), Complex(u(eng), u(eng))});
        }
    }
    const MapExpr a = random_composition(eng, depth - 1);
    switch (pick(eng) % 4) {
    case 0: return compose(random_composition(eng, 1), a);
    case 1: return scale(Complex(u(eng), 0.5), a);
    case 2: return affine(CVector{Complex(u(eng), 0.0), Complex(0.0, u(eng))}, random_matrix(eng, 2, 0.5), a);
    default: return dilate(a, 0.5 + std::abs(u(eng)));
    }
}

/// Central finite-difference Jacobian with step h along each real axis (holomorphic: d/dz = d/dx).
inline CMatrix finite_difference_jacobian(const MapExpr& m, const CVector& z, double h) {
    const std::size_t k = m.dim();
    CMatrix J(k);
    for (std::size_t j = 0; j < k; ++j) {
        CVector zp = z, zm = z;
        zp[j] += h;
        zm[j] -= h;
        const CVector d = (eval(m, zp) - eval(m, zm)) * Complex(1.0 / (2.0 * h));
        for (std::size_t i = 0; i < k; ++i) J(i, j) = d[i];
    }
    return J;
}

} // namespace holo::testing
