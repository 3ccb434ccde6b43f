#pragma once

// Condition functionals of holomorphic maps:
//   kappa(z)      = |Phi'(z)| |Phi'(z)^{-1}|            (spectral norm)
//   refined(a)    = sup_{|z| <= (1-|a|)/2} |Phi'(a+z) Phi'(a)^{-1}|
//   ratio(z)      = |lambda_max(Phi'(z))| / |lambda_min(Phi'(z))|
// Suprema are sampled lower estimates.

#include "holo/mapkit.hpp"
#include "holo/sampling.hpp"

#include <string>

namespace holo {

struct ConditionReport {
    double sup_estimate = 1.0;
    CVector argmax_point;
    std::size_t samples_used = 0;
    std::size_t skipped_singular = 0;
    std::string norm_name{kNormName};
};

/// kappa of the Jacobian at z; +inf where it is singular.
double kappa_at(const MapExpr& m, const CVector& z);

/// Throws DimensionMismatch when dom.dim != m.dim(), EmptySample when every point is excluded.
ConditionReport sup_kappa(const MapExpr& m, const DomainSpec& dom, const SamplerConfig& cfg);

/// Throws InvalidArgument unless |a| < 1, SingularBasePoint when Phi'(a) is singular.
double refined_sup(const MapExpr& m, const CVector& a, const SamplerConfig& cfg);

/// Throws SingularJacobian when Phi'(z) is singular.
double comparability_ratio(const MapExpr& m, const CVector& z);

} // namespace holo
