#pragma once

// Brody-Zalcman renormalization of maps of the unit ball B^k.
//
// For Phi on B^k let
//   lambda = sup_{|z|<1} (1 - |z|) |Phi'(z)|,
// a a (near-)maximizer, B = Phi'(a)^{-1} and Psi(z) = Phi(a + B z).
// Then Psi'(0) = Id, and whenever sup kappa <= C one has |B z| <= (1-|a|)/2 and
// |Psi'(z)| <= 2C on |z| <= lambda/(2C). A bounded sequence lambda_n is the
// normal-family branch; lambda_n -> inf is the rescaling branch.

#include "holo/mapkit.hpp"
#include "holo/sampling.hpp"

#include <functional>
#include <optional>
#include <span>
#include <string>

namespace holo {

struct RenormConfig {
    SamplerConfig sampler;
    /// The bound check grid covers |z| <= check_radius_factor * validity_radius.
    double check_radius_factor = 0.9;
    /// Relative slack on the 2C bound.
    double bound_tolerance = 1e-6;

    friend bool operator==(const RenormConfig&, const RenormConfig&) = default;
};

struct DerivativeBoundCheck {
    double max_psi_derivative = 0.0; ///< max sampled |Psi'(z)|
    double bound = 0.0;              ///< 2C
    double max_Bz = 0.0;             ///< max sampled |B z|
    double Bz_bound = 0.0;           ///< (1 - |a|)/2
    double check_radius = 0.0;
    std::size_t points_checked = 0;
    bool derivative_pass = false;
    bool Bz_pass = false;
    std::optional<CVector> offending_point;

    bool pass() const { return derivative_pass && Bz_pass; }
};

struct RenormStep {
    double lambda = 0.0;
    CVector base_point;
    CMatrix B;
    MapExpr psi;
    double C = 1.0;
    double validity_radius = 0.0; ///< lambda / (2C)
    DerivativeBoundCheck check;
};

struct LambdaResult {
    double lambda = 0.0;
    CVector a_star;
    std::size_t samples_used = 0;
};

/// Sampled lower estimate of sup (1-|z|)|Phi'(z)| over the unit ball.
LambdaResult lambda_functional(const MapExpr& m, const SamplerConfig& cfg);

/// One renormalization step with caller-supplied C >= 1.
/// Throws SingularJacobianAtBase when Phi'(a_star) is singular. Failed bound
/// checks are recorded, not thrown.
RenormStep bz_step(const MapExpr& m, double C, const RenormConfig& cfg);

struct BzOutcome {
    int n = 0;
    std::optional<RenormStep> step;
    std::string error;
};

/// One step per n, in order; errors are reported per element.
std::vector<BzOutcome> bz_sequence(const std::function<MapExpr(int)>& family, std::span<const int> n_values,
                                   double C, const RenormConfig& cfg);

/// d_i = max over a grid of |z| <= radius of |psi_{i+1}(z) - psi_i(z)|.
/// The grid has grid_per_axis points on each of the 2k real axes of [-radius, radius].
/// Throws RadiusExceedsValidity when radius > min validity_radius.
std::vector<double> convergence_diagnostic(std::span<const RenormStep> steps, double radius, int grid_per_axis);

/// Points of the cube grid on [-radius, radius]^{2k} that lie in the closed ball.
std::vector<CVector> ball_grid(std::size_t k, double radius, int grid_per_axis);

} // namespace holo
