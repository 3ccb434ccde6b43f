#pragma once

// Certified witnesses that the images of the unit polydisc under
//   g(z, w) = (z + n w^2, w)         (Harris)
//   f(z, w) = (z, w + (z/delta)^2)   (Duren-Rudin)
// contain no large balls.
//
// Harris. If B((a0, b0), delta) were inside g(polydisc), then for each |zeta| < delta
// there are preimages (z0, w0) of (a0, b0) and (z1, w1) of (a0, b0 + zeta), so
// w1 - w0 = zeta, w1 + w0 = 2 b0 + zeta and n (w1^2 - w0^2) = z0 - z1, which forces
//     n |zeta| |2 b0 + zeta| <= 2.
// Aligning zeta with b0 (zeta = s delta e^{i arg b0}) gives |2 b0 + zeta| = 2|b0| + s delta >= s delta,
// so once n delta^2 > 2 some s < 1 violates the inequality. Hence any ball has
// radius <= sqrt(2/n).
//
// Duren-Rudin. The circle {(u + delta e^{it}, v)} lies in f(polydisc) only if
//     g(t) = |(delta^2 v - u^2) - 2 u delta e^{it} - delta^2 e^{2it}| < delta^2   for all t.
// g is the modulus of a trigonometric polynomial whose mean square is
// |delta^2 v - u^2|^2 + 4|u|^2 delta^2 + delta^4 >= delta^4, so max g >= delta^2.

#include "holo/mapkit.hpp"

#include <span>
#include <string>
#include <utility>

namespace holo {

struct HarrisWitness {
    int n = 0;
    double delta = 0.0;
    Complex alpha0;
    Complex beta0;
    Complex zeta;
    double violation = 0.0; ///< n |zeta| |2 beta0 + zeta|

    /// Recomputes the inequality from the stored fields.
    bool verify() const;
};

struct DRWitness {
    double delta = 0.0;
    Complex u;
    Complex v;
    double theta_star = 0.0;
    double circle_value = 0.0;

    bool verify(double tol = 1e-9) const;
};

/// Throws PreconditionFailed unless n * delta^2 > 2.
HarrisWitness harris_witness(int n, double delta, Complex alpha0, Complex beta0);

/// |(delta^2 v - u^2) - 2 u delta e^{it} - delta^2 e^{2it}|
double duren_rudin_circle(double delta, Complex u, Complex v, double theta);

/// Maximizes duren_rudin_circle over theta (1024-point grid + 40 ternary refinements).
/// Throws InvalidArgument unless delta > 0.
DRWitness duren_rudin_witness(double delta, Complex u, Complex v);

/// Grid mean of duren_rudin_circle^2 over [-pi, pi).
double parseval_grid_mean(double delta, Complex u, Complex v, int grid = 1024);
/// Exact mean square: |delta^2 v - u^2|^2 + 4 |u|^2 delta^2 + delta^4.
double parseval_exact(double delta, Complex u, Complex v);

struct CertifiedBound {
    double bound = 0.0;
    std::string label = "certified";
    std::string map_text;
    std::size_t centers_checked = 0;
    std::vector<HarrisWitness> harris;
    std::vector<DRWitness> duren_rudin;
};

/// Upper bound on the Landau number of a harris(n) or durenrudin(delta) map on the
/// unit polydisc: sqrt(2/n) or delta respectively. A witness is computed at every
/// centre (Harris probes a radius just above sqrt(2/n)).
/// Throws InvalidArgument for other maps or an empty centre list, WitnessFailed if a witness does not verify.
CertifiedBound certify_no_ball(const MapExpr& m, std::span<const std::pair<Complex, Complex>> centers);

/// Relative excess over sqrt(2/n) used to probe Harris maps.
inline constexpr double kHarrisProbeExcess = 1e-9;

} // namespace holo
