#pragma once

// Holomorphic dual numbers: v + d*eps with eps^2 = 0 and complex v, d.
// Evaluating a holomorphic expression on (z, 1) yields (f(z), f'(z)).

#include <complex>

namespace holo {

struct HDual {
    std::complex<double> v;
    std::complex<double> d;

    constexpr HDual() = default;
    constexpr HDual(std::complex<double> value) : v(value) {}
    constexpr HDual(double value) : v(value) {}
    constexpr HDual(std::complex<double> value, std::complex<double> deriv) : v(value), d(deriv) {}

    HDual& operator+=(const HDual& o) {
        v += o.v;
        d += o.d;
        return *this;
    }
    HDual& operator-=(const HDual& o) {
        v -= o.v;
        d -= o.d;
        return *this;
    }
    HDual& operator*=(const HDual& o) {
        d = v * o.d + d * o.v;
        v *= o.v;
        return *this;
    }
    HDual& operator/=(const HDual& o) {
        d = (d * o.v - v * o.d) / (o.v * o.v);
        v /= o.v;
        return *this;
    }

    friend HDual operator+(HDual a, const HDual& b) { return a += b; }
    friend HDual operator-(HDual a, const HDual& b) { return a -= b; }
    friend HDual operator*(HDual a, const HDual& b) { return a *= b; }
    friend HDual operator/(HDual a, const HDual& b) { return a /= b; }
    friend HDual operator-(const HDual& a) { return {-a.v, -a.d}; }

    friend HDual exp(const HDual& a) {
        const auto e = std::exp(a.v);
        return {e, a.d * e};
    }
};

/// x^n by repeated squaring; works for std::complex<double> and HDual.
template <class T>
T ipow(T x, unsigned n) {
    T r(1.0);
    while (n) {
        if (n & 1u) r *= x;
        n >>= 1u;
        if (n) x *= x;
    }
    return r;
}

} // namespace holo
