#include "holo/renorm.hpp"

#include "holo/errors.hpp"
#include "holo/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace holo {

LambdaResult lambda_functional(const MapExpr& m, const SamplerConfig& cfg) {
    const DomainSpec unit{DomainShape::Ball, 1.0, m.dim()};
    const Objective f = [&](const CVector& z) -> std::optional<double> {
        return (1.0 - z.norm()) * spectral_norm(jacobian(m, z).jacobian);
    };
    const auto best = sample_maximize(f, unit, CVector::zeros(m.dim()), cfg);
    return {best.value, best.argmax, best.samples_used};
}

RenormStep bz_step(const MapExpr& m, double C, const RenormConfig& cfg) {
    if (!(C >= 1.0) || !std::isfinite(C)) throw InvalidArgument("bz_step: C must be a finite constant >= 1");
    const auto lam = lambda_functional(m, cfg.sampler);

    CMatrix B;
    try {
        B = invert(jacobian(m, lam.a_star).jacobian);
    } catch (const SingularMatrix&) {
        throw SingularJacobianAtBase("bz_step: Jacobian is singular at the sampled maximizer");
    }

    RenormStep step{
        .lambda = lam.lambda,
        .base_point = lam.a_star,
        .B = B,
        .psi = reparametrize(m, lam.a_star, B),
        .C = C,
        .validity_radius = lam.lambda / (2.0 * C),
        .check = {},
    };

    auto& chk = step.check;
    chk.bound = 2.0 * C;
    chk.Bz_bound = (1.0 - lam.a_star.norm()) / 2.0;
    chk.check_radius = cfg.check_radius_factor * step.validity_radius;

    SamplerConfig grid_cfg = cfg.sampler;
    grid_cfg.rng_seed = derive_seed(cfg.sampler.rng_seed, "bound-check");
    const DomainSpec disc{DomainShape::Ball, chk.check_radius, m.dim()};
    const auto pts = chk.check_radius > 0.0 ? shell_samples(disc, CVector::zeros(m.dim()), grid_cfg)
                                            : std::vector<CVector>{CVector::zeros(m.dim())};

    struct Sample {
        double dpsi;
        double bz;
    };
    std::vector<Sample> vals(pts.size());
    parallel_for(pts.size(), [&](std::size_t i) {
        vals[i] = {spectral_norm(jacobian(step.psi, pts[i]).jacobian), (B * pts[i]).norm()};
    });

    const double dlimit = chk.bound * (1.0 + cfg.bound_tolerance);
    const double bzlimit = chk.Bz_bound * (1.0 + 1e-9) + 1e-12;
    chk.points_checked = pts.size();
    chk.derivative_pass = true;
    chk.Bz_pass = true;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        chk.max_psi_derivative = std::max(chk.max_psi_derivative, vals[i].dpsi);
        chk.max_Bz = std::max(chk.max_Bz, vals[i].bz);
        const bool bad = !(vals[i].dpsi <= dlimit) || !(vals[i].bz <= bzlimit);
        if (!(vals[i].dpsi <= dlimit)) chk.derivative_pass = false;
        if (!(vals[i].bz <= bzlimit)) chk.Bz_pass = false;
        if (bad && !chk.offending_point) chk.offending_point = pts[i];
    }
    return step;
}

std::vector<BzOutcome> bz_sequence(const std::function<MapExpr(int)>& family, std::span<const int> n_values,
                                   double C, const RenormConfig& cfg) {
    std::vector<BzOutcome> out(n_values.size());
    for (std::size_t i = 0; i < n_values.size(); ++i) out[i].n = n_values[i];
    // Steps run one after another; each step parallelizes its own sampling.
    for (auto& o : out) {
        try {
            o.step = bz_step(family(o.n), C, cfg);
        } catch (const Error& e) {
            o.error = e.what();
        }
    }
    return out;
}

std::vector<CVector> ball_grid(std::size_t k, double radius, int grid_per_axis) {
    if (grid_per_axis < 1) throw InvalidArgument("grid_per_axis must be >= 1");
    const std::size_t dims = 2 * k;
    std::vector<double> ticks(static_cast<std::size_t>(grid_per_axis));
    for (int i = 0; i < grid_per_axis; ++i)
        ticks[static_cast<std::size_t>(i)] =
            grid_per_axis == 1 ? 0.0 : radius * (-1.0 + 2.0 * i / static_cast<double>(grid_per_axis - 1));

    std::vector<CVector> pts;
    std::vector<std::size_t> idx(dims, 0);
    while (true) {
        CVector z(k);
        for (std::size_t i = 0; i < k; ++i) z[i] = Complex(ticks[idx[2 * i]], ticks[idx[2 * i + 1]]);
        if (z.norm() <= radius * (1.0 + 1e-12)) pts.push_back(std::move(z));
        std::size_t d = 0;
        while (d < dims && ++idx[d] == ticks.size()) idx[d++] = 0;
        if (d == dims) break;
    }
    return pts;
}

std::vector<double> convergence_diagnostic(std::span<const RenormStep> steps, double radius, int grid_per_axis) {
    if (steps.empty()) return {};
    double min_valid = std::numeric_limits<double>::infinity();
    for (const auto& s : steps) min_valid = std::min(min_valid, s.validity_radius);
    if (radius > min_valid)
        throw RadiusExceedsValidity("convergence_diagnostic: radius " + format_real(radius) +
                                    " exceeds the smallest validity radius " + format_real(min_valid));
    const std::size_t k = steps.front().psi.dim();
    for (const auto& s : steps)
        if (s.psi.dim() != k) throw DimensionMismatch(k, s.psi.dim(), "convergence_diagnostic");

    const auto grid = ball_grid(k, radius, grid_per_axis);
    std::vector<double> d(steps.size() - 1, 0.0);
    parallel_for(d.size(), [&](std::size_t n) {
        double m = 0.0;
        for (const auto& z : grid) m = std::max(m, (eval(steps[n + 1].psi, z) - eval(steps[n].psi, z)).norm());
        d[n] = m;
    });
    return d;
}

} // namespace holo
