#include "holo/conditioning.hpp"

#include "holo/errors.hpp"

#include <algorithm>
#include <cmath>

namespace holo {

double kappa_at(const MapExpr& m, const CVector& z) { return kappa(jacobian(m, z).jacobian); }

ConditionReport sup_kappa(const MapExpr& m, const DomainSpec& dom, const SamplerConfig& cfg) {
    if (dom.dim != m.dim()) throw DimensionMismatch(m.dim(), dom.dim, "sup_kappa domain");
    const double excl = cfg.exclusion_tolerance > 0.0 ? std::max(cfg.exclusion_tolerance, kSingularThreshold) : 0.0;
    const Objective f = [&](const CVector& z) -> std::optional<double> {
        const auto sv = singular_values(jacobian(m, z).jacobian);
        if (excl > 0.0 && std::isinf(kappa_from_singular_values(sv, excl))) return std::nullopt;
        return kappa_from_singular_values(sv);
    };
    const auto best = sample_maximize(f, dom, CVector::zeros(dom.dim), cfg);
    ConditionReport rep;
    rep.sup_estimate = best.value;
    rep.argmax_point = best.argmax;
    rep.samples_used = best.samples_used;
    rep.skipped_singular = best.skipped;
    return rep;
}

double refined_sup(const MapExpr& m, const CVector& a, const SamplerConfig& cfg) {
    if (a.size() != m.dim()) throw DimensionMismatch(m.dim(), a.size(), "refined_sup base point");
    const double na = a.norm();
    if (!(na < 1.0)) throw InvalidArgument("refined_sup: base point must lie in the open unit ball");
    CMatrix base_inv;
    try {
        base_inv = invert(jacobian(m, a).jacobian);
    } catch (const SingularMatrix&) {
        throw SingularBasePoint("refined_sup: Jacobian is singular at the base point");
    }
    const DomainSpec local{DomainShape::Ball, (1.0 - na) / 2.0, m.dim()};
    const Objective f = [&](const CVector& w) -> std::optional<double> {
        return spectral_norm(jacobian(m, w).jacobian * base_inv);
    };
    return sample_maximize(f, local, a, cfg).value;
}

double comparability_ratio(const MapExpr& m, const CVector& z) {
    const CMatrix J = jacobian(m, z).jacobian;
    if (std::isinf(kappa(J))) throw SingularJacobian("comparability_ratio: Jacobian is singular");
    const auto mod = eigen_moduli(J);
    return mod.back() / mod.front();
}

} // namespace holo
