#include "holo/counterexamples.hpp"

#include "holo/errors.hpp"

#include <cmath>
#include <numbers>

namespace holo {

bool HarrisWitness::verify() const {
    const double v = static_cast<double>(n) * std::abs(zeta) * std::abs(2.0 * beta0 + zeta);
    return std::abs(zeta) < delta && v > 2.0 && violation > 2.0;
}

bool DRWitness::verify(double tol) const {
    return duren_rudin_circle(delta, u, v, theta_star) >= delta * delta - tol && circle_value >= delta * delta - tol;
}

HarrisWitness harris_witness(int n, double delta, Complex alpha0, Complex beta0) {
    const double nd = static_cast<double>(n);
    if (n <= 0 || !(delta > 0.0) || !(nd * delta * delta > 2.0))
        throw PreconditionFailed("harris_witness requires n * delta^2 > 2");
    const double phi = beta0 == Complex(0.0) ? 0.0 : std::arg(beta0);
    const double b = std::abs(beta0);
    auto violation_at = [&](double s) { return nd * s * delta * (2.0 * b + s * delta); };

    // s = 0.99 unless too close to the threshold; otherwise midway between the
    // root s* of n s delta (2|b0| + s delta) = 2 and 1.
    double s = 0.99;
    if (!(violation_at(s) > 2.0)) {
        const double qa = nd * delta * delta;
        const double qb = 2.0 * nd * delta * b;
        const double s_star = 4.0 / (qb + std::sqrt(qb * qb + 8.0 * qa)); // stable root of qa s^2 + qb s - 2
        s = 0.5 * (s_star + 1.0);
    }
    HarrisWitness w{n, delta, alpha0, beta0, std::polar(s * delta, phi), 0.0};
    w.violation = nd * std::abs(w.zeta) * std::abs(2.0 * beta0 + w.zeta);
    return w;
}

double duren_rudin_circle(double delta, Complex u, Complex v, double theta) {
    const Complex e = std::polar(1.0, theta);
    const double d2 = delta * delta;
    return std::abs((d2 * v - u * u) - 2.0 * u * delta * e - d2 * e * e);
}

DRWitness duren_rudin_witness(double delta, Complex u, Complex v) {
    if (!(delta > 0.0)) throw InvalidArgument("duren_rudin_witness requires delta > 0");
    constexpr int grid = 1024;
    constexpr int refinements = 40;
    const double step = 2.0 * std::numbers::pi / grid;
    auto g = [&](double t) { return duren_rudin_circle(delta, u, v, t); };

    double best_t = -std::numbers::pi;
    double best = g(best_t);
    for (int i = 1; i < grid; ++i) {
        const double t = -std::numbers::pi + i * step;
        const double val = g(t);
        if (val > best) {
            best = val;
            best_t = t;
        }
    }
    // ternary search on the bracketing cell pair
    double lo = best_t - step, hi = best_t + step;
    for (int i = 0; i < refinements; ++i) {
        const double m1 = lo + (hi - lo) / 3.0;
        const double m2 = hi - (hi - lo) / 3.0;
        if (g(m1) < g(m2)) lo = m1;
        else hi = m2;
    }
    const double t_ref = 0.5 * (lo + hi);
    if (g(t_ref) > best) {
        best = g(t_ref);
        best_t = t_ref;
    }
    return DRWitness{delta, u, v, best_t, best};
}

double parseval_grid_mean(double delta, Complex u, Complex v, int grid) {
    double s = 0.0;
    for (int i = 0; i < grid; ++i) {
        const double g = duren_rudin_circle(delta, u, v, -std::numbers::pi + 2.0 * std::numbers::pi * i / grid);
        s += g * g;
    }
    return s / grid;
}

double parseval_exact(double delta, Complex u, Complex v) {
    const double d2 = delta * delta;
    return std::norm(d2 * v - u * u) + 4.0 * std::norm(u) * d2 + d2 * d2;
}

CertifiedBound certify_no_ball(const MapExpr& m, std::span<const std::pair<Complex, Complex>> centers) {
    if (centers.empty()) throw InvalidArgument("certify_no_ball: no centres given");
    CertifiedBound out;
    out.map_text = print(m);
    out.centers_checked = centers.size();
    if (const auto* h = std::get_if<nodes::Harris>(&m.node().v)) {
        out.bound = std::sqrt(2.0 / h->n);
        const double probe = out.bound * (1.0 + kHarrisProbeExcess);
        for (const auto& [a, b] : centers) {
            auto w = harris_witness(h->n, probe, a, b);
            if (!w.verify()) throw WitnessFailed("Harris witness failed at centre (" + format_complex(a) + ", " +
                                                 format_complex(b) + ")");
            out.harris.push_back(w);
        }
        return out;
    }
    if (const auto* d = std::get_if<nodes::DurenRudin>(&m.node().v)) {
        out.bound = d->delta;
        for (const auto& [u, v] : centers) {
            auto w = duren_rudin_witness(d->delta, u, v);
            if (!w.verify()) throw WitnessFailed("Duren-Rudin witness failed at centre (" + format_complex(u) + ", " +
                                                 format_complex(v) + ")");
            out.duren_rudin.push_back(w);
        }
        return out;
    }
    throw InvalidArgument("certify_no_ball: expected harris(n) or durenrudin(delta), got " + print(m));
}

} // namespace holo
