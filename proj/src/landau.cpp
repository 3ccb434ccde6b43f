#include "holo/landau.hpp"

#include "holo/counterexamples.hpp"
#include "holo/errors.hpp"
#include "holo/parallel.hpp"
#include "holo/sampling.hpp"

#include <bit>
#include <cmath>
#include <limits>

namespace holo {

namespace {

struct NewtonOutcome {
    std::optional<CVector> root;
    double residual = std::numeric_limits<double>::infinity();
};

// Damped Newton for Phi(z) = b from z0.
NewtonOutcome newton(const MapExpr& m, const CVector& b, CVector z, const DomainSpec& dom, const NewtonConfig& cfg) {
    NewtonOutcome out;
    const double escape = 1e3 * (dom.radius + 1.0);
    for (int it = 0; it <= cfg.max_iterations; ++it) {
        const Jet jet = jacobian(m, z);
        const CVector F = jet.value - b;
        const double res = F.norm();
        if (!std::isfinite(res)) return out;
        out.residual = std::min(out.residual, res);
        if (res <= cfg.tolerance) {
            out.root = std::move(z);
            return out;
        }
        if (it == cfg.max_iterations) break;
        CVector dz;
        try {
            dz = invert(jet.jacobian) * F;
        } catch (const SingularMatrix&) {
            return out;
        }
        // backtrack until the residual decreases
        double t = 1.0;
        bool moved = false;
        for (int h = 0; h < 12; ++h, t *= 0.5) {
            CVector zn = z - t * dz;
            const double rn = (eval(m, zn) - b).norm();
            if (std::isfinite(rn) && rn < res) {
                z = std::move(zn);
                moved = true;
                break;
            }
        }
        if (!moved || !(z.norm() < escape)) return out;
    }
    return out;
}

std::uint64_t salt_of(std::size_t j, double r) { return mix_seed(j, std::bit_cast<std::uint64_t>(r)); }

} // namespace

MembershipResult solve_membership(const MapExpr& m, const CVector& b, const DomainSpec& dom, const NewtonConfig& cfg,
                                  const MembershipCertificate* previous, std::span<const CVector> seeds,
                                  std::uint64_t salt) {
    if (b.size() != m.dim()) throw DimensionMismatch(m.dim(), b.size(), "solve_membership target");
    if (dom.dim != m.dim()) throw DimensionMismatch(m.dim(), dom.dim, "solve_membership domain");

    MembershipResult result;
    result.best_residual = std::numeric_limits<double>::infinity();

    auto accept = [&](const NewtonOutcome& o) {
        result.best_residual = std::min(result.best_residual, o.residual);
        if (!o.root) return false;
        const double margin = dom.margin(*o.root);
        if (!(margin >= cfg.domain_margin_min)) return false;
        result.certificate = MembershipCertificate{b, *o.root, o.residual, margin};
        return true;
    };

    if (previous) {
        // direct step first, then tracked continuation along the target segment
        if (accept(newton(m, b, previous->preimage, dom, cfg))) return result;
        if (cfg.continuation_steps > 1) {
            CVector z = previous->preimage;
            bool ok = true;
            for (int s = 1; s <= cfg.continuation_steps && ok; ++s) {
                const double t = static_cast<double>(s) / cfg.continuation_steps;
                const CVector bt = previous->target + t * (b - previous->target);
                auto o = newton(m, bt, z, dom, cfg);
                if (s == cfg.continuation_steps) {
                    if (accept(o)) return result;
                    ok = false;
                } else if (o.root) {
                    z = *o.root;
                } else {
                    ok = false;
                }
            }
        }
    }
    for (const auto& s : seeds)
        if (accept(newton(m, b, s, dom, cfg))) return result;
    if (accept(newton(m, b, CVector::zeros(dom.dim), dom, cfg))) return result;
    for (int i = 0; i < cfg.multistart_count; ++i) {
        auto eng = slot_engine(cfg.rng_seed, salt, static_cast<std::uint64_t>(i));
        if (accept(newton(m, b, random_point(eng, dom), dom, cfg))) return result;
    }
    return result;
}

bool verify_certificate(const MapExpr& m, const MembershipCertificate& c, const DomainSpec& dom,
                        const NewtonConfig& cfg) {
    return (eval(m, c.preimage) - c.target).norm() <= cfg.tolerance &&
           dom.margin(c.preimage) >= cfg.domain_margin_min;
}

std::string_view bound_kind_name(BoundKind k) { return k == BoundKind::Certified ? "certified" : "heuristic"; }

LandauEstimate inscribed_lower_bound(const MapExpr& m, const CVector& a, const DomainSpec& dom,
                                     const InscribedConfig& cfg, std::optional<double> r_start) {
    const std::size_t k = m.dim();
    if (a.size() != k) throw DimensionMismatch(k, a.size(), "inscribed_lower_bound centre");
    if (!(cfg.growth_factor > 1.0)) throw InvalidArgument("growth_factor must be > 1");
    const auto& ncfg = cfg.newton;
    const std::size_t count =
        cfg.direction_count > 0 ? static_cast<std::size_t>(cfg.direction_count) : 64 * k;
    const auto dirs = sphere_directions(k, count, derive_seed(ncfg.rng_seed, "directions"));

    const auto centre = solve_membership(m, a, dom, ncfg, nullptr, {}, derive_seed(ncfg.rng_seed, "centre"));
    if (!centre.found())
        throw CenterNotInImage("centre is not certified to lie in the image (best residual " +
                               format_real(centre.best_residual) + ")");
    const MembershipCertificate& ccert = *centre.certificate;
    const std::vector<CVector> centre_seed{ccert.preimage};

    using Shell = std::vector<MembershipCertificate>;
    // Certifies every direction at radius r; continuation from `from` when given.
    auto test_shell = [&](double r, const Shell* from) -> std::optional<Shell> {
        std::vector<MembershipResult> res(count);
        parallel_for(count, [&](std::size_t j) {
            const CVector target = a + r * dirs[j];
            const MembershipCertificate* prev = from ? &(*from)[j] : &ccert;
            res[j] = solve_membership(m, target, dom, ncfg, prev, centre_seed, salt_of(j, r));
        });
        Shell shell;
        shell.reserve(count);
        for (auto& x : res) {
            if (!x.found()) return std::nullopt;
            shell.push_back(std::move(*x.certificate));
        }
        return shell;
    };

    double lo = 0.0;
    double hi = std::numeric_limits<double>::infinity();
    std::optional<Shell> lo_shell;
    double r = r_start && *r_start > 0.0 ? *r_start : ncfg.tolerance * 1e3;
    for (int step = 0; step < cfg.max_growth_steps; ++step) {
        auto shell = test_shell(r, lo_shell ? &*lo_shell : nullptr);
        if (!shell) {
            hi = r;
            break;
        }
        lo = r;
        lo_shell = std::move(shell);
        r *= cfg.growth_factor;
    }
    if (std::isfinite(hi)) {
        for (int i = 0; i < cfg.bisection_steps; ++i) {
            const double mid = 0.5 * (lo + hi);
            auto shell = test_shell(mid, lo_shell ? &*lo_shell : nullptr);
            if (shell) {
                lo = mid;
                lo_shell = std::move(shell);
            } else {
                hi = mid;
            }
        }
    }

    LandauEstimate est;
    est.center = a;
    est.r_lo = lo;
    est.r_hi = hi;
    est.r_hi_kind = BoundKind::Heuristic;
    est.directions_tested = static_cast<int>(count);
    est.certificates.push_back(ccert);
    if (lo_shell) est.certificates.insert(est.certificates.end(), lo_shell->begin(), lo_shell->end());
    return est;
}

namespace {

void attach_certified_bound(const MapExpr& m, const DomainSpec& dom, LandauEstimate& est) {
    const bool counterexample = std::holds_alternative<nodes::Harris>(m.node().v) ||
                                std::holds_alternative<nodes::DurenRudin>(m.node().v);
    if (!counterexample || dom.shape != DomainShape::Polydisc || dom.radius != 1.0) return;
    const std::pair<Complex, Complex> c{est.center[0], est.center[1]};
    const auto bound = certify_no_ball(m, std::span(&c, 1));
    est.r_hi = bound.bound;
    est.r_hi_kind = BoundKind::Certified;
}

} // namespace

LandauEstimate landau_estimate(const MapExpr& m, const DomainSpec& dom, const LandauConfig& cfg) {
    const std::size_t k = m.dim();
    if (dom.dim != k) throw DimensionMismatch(k, dom.dim, "landau_estimate domain");
    const CVector image_of_origin = eval(m, CVector::zeros(k));
    if (!image_of_origin.all_finite()) throw InvalidArgument("landau_estimate: Phi(0) is not finite");

    std::vector<CVector> centres{image_of_origin};
    const auto centre_seed = derive_seed(cfg.inscribed.newton.rng_seed, "centres");
    for (int i = 0; i < cfg.center_candidates; ++i) {
        auto eng = slot_engine(centre_seed, static_cast<std::uint64_t>(i));
        centres.push_back(eval(m, random_point(eng, dom)));
    }

    std::optional<LandauEstimate> best;
    for (const auto& c : centres) {
        try {
            auto est = inscribed_lower_bound(m, c, dom, cfg.inscribed);
            if (!best || est.r_lo > best->r_lo) best = std::move(est);
        } catch (const CenterNotInImage&) {
        }
    }
    if (!best) throw CenterNotInImage("landau_estimate: no candidate centre could be certified");

    double h = best->r_lo > 0.0 ? 0.25 * best->r_lo : 0.01 * dom.radius;
    for (int step = 0; step < cfg.center_refine_steps; ++step) {
        std::optional<LandauEstimate> improved;
        for (std::size_t axis = 0; axis < 2 * k; ++axis) {
            for (double sgn : {1.0, -1.0}) {
                CVector c = best->center;
                c[axis / 2] += axis % 2 == 0 ? Complex(sgn * h, 0.0) : Complex(0.0, sgn * h);
                try {
                    auto est = inscribed_lower_bound(m, c, dom, cfg.inscribed, 0.5 * best->r_lo);
                    const double bar = improved ? improved->r_lo : best->r_lo;
                    if (est.r_lo > bar) improved = std::move(est);
                } catch (const CenterNotInImage&) {
                }
            }
        }
        if (improved) best = std::move(improved);
        else h *= 0.5;
    }
    attach_certified_bound(m, dom, *best);
    return *best;
}

std::vector<GrowthPoint> rescaled_growth(const MapExpr& m, std::span<const double> R_values, const DomainSpec& dom,
                                         const LandauConfig& cfg) {
    std::vector<GrowthPoint> out;
    for (double R : R_values) {
        const auto est = landau_estimate(dilate(m, R), dom, cfg);
        out.push_back({R, est.r_lo, R * est.r_lo});
    }
    return out;
}

} // namespace holo
