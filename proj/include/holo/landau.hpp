#pragma once

// Landau-number estimation: the largest r such that Phi(domain) contains a
// Euclidean ball of radius r. Lower bounds come from Newton membership
// certificates (a verified preimage strictly inside the domain) on quasi-uniform
// sphere points around a centre; a failed solve is never a proof of
// non-membership, so upper bounds are heuristic unless a counterexample
// witness supplies a certified one.

#include "holo/mapkit.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>

namespace holo {

struct NewtonConfig {
    int max_iterations = 40;
    double tolerance = 1e-10;
    int multistart_count = 8;
    int continuation_steps = 4;
    double domain_margin_min = 1e-6;
    std::uint64_t rng_seed = 0;

    friend bool operator==(const NewtonConfig&, const NewtonConfig&) = default;
};

struct MembershipCertificate {
    CVector target;
    CVector preimage;
    double residual = 0.0;      ///< |Phi(preimage) - target|
    double domain_margin = 0.0; ///< radius - norm(preimage)
};

struct MembershipResult {
    std::optional<MembershipCertificate> certificate;
    double best_residual = 0.0; ///< smallest residual reached by any start

    bool found() const { return certificate.has_value(); }
};

/// Solves Phi(z) = b inside dom. Starts, in order: continuation from `previous`
/// (its preimage tracked along the segment previous.target -> b), the extra
/// `seeds`, the domain centre, then random points drawn from (cfg.rng_seed, salt).
/// A start whose Newton step is singular or non-finite is abandoned.
MembershipResult solve_membership(const MapExpr& m, const CVector& b, const DomainSpec& dom,
                                  const NewtonConfig& cfg, const MembershipCertificate* previous = nullptr,
                                  std::span<const CVector> seeds = {}, std::uint64_t salt = 0);

/// Re-checks a stored certificate against the map and the domain.
bool verify_certificate(const MapExpr& m, const MembershipCertificate& c, const DomainSpec& dom,
                        const NewtonConfig& cfg);

enum class BoundKind { Heuristic, Certified };
std::string_view bound_kind_name(BoundKind k);

struct LandauEstimate {
    CVector center;
    double r_lo = 0.0; ///< every tested sphere point a + r_lo u_j carries a certificate
    double r_hi = 0.0; ///< +inf when no failure was observed
    BoundKind r_hi_kind = BoundKind::Heuristic;
    std::vector<MembershipCertificate> certificates; ///< centre + last fully certified sphere
    int directions_tested = 0;
};

struct InscribedConfig {
    NewtonConfig newton;
    int direction_count = 0; ///< 0 means 64 k
    double growth_factor = 1.05;
    int bisection_steps = 16;
    int max_growth_steps = 4000;

    friend bool operator==(const InscribedConfig&, const InscribedConfig&) = default;
};

/// Grows r multiplicatively from r0 (default tolerance * 1e3) while every sphere
/// point a + r u_j is certified, then bisects between the last success and the
/// first failure. Throws CenterNotInImage when a itself cannot be certified.
LandauEstimate inscribed_lower_bound(const MapExpr& m, const CVector& a, const DomainSpec& dom,
                                     const InscribedConfig& cfg, std::optional<double> r_start = std::nullopt);

struct LandauConfig {
    InscribedConfig inscribed;
    int center_candidates = 4;
    int center_refine_steps = 3;

    friend bool operator==(const LandauConfig&, const LandauConfig&) = default;
};

/// Best inscribed_lower_bound over the centres Phi(0) and Phi(z_i) for
/// center_candidates random z_i, followed by coordinate hill climbing of the
/// best centre. For harris/durenrudin maps on the unit polydisc r_hi is the
/// certified counterexample bound.
LandauEstimate landau_estimate(const MapExpr& m, const DomainSpec& dom, const LandauConfig& cfg);

struct GrowthPoint {
    double R = 0.0;
    double r_lo = 0.0;        ///< estimate for dilate(m, R)
    double r_times_rlo = 0.0; ///< R * r_lo: inscribed radius of m(R * domain)
};

/// landau_estimate of dilate(m, R) for each R, scaled back by R.
std::vector<GrowthPoint> rescaled_growth(const MapExpr& m, std::span<const double> R_values, const DomainSpec& dom,
                                         const LandauConfig& cfg);

} // namespace holo
