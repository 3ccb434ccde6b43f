#pragma once

// Deterministic sampling of balls / polydiscs and a sample-then-refine
// maximizer shared by the condition functionals and the renormalization.

#include "holo/mapkit.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string_view>

namespace holo {

struct SamplerConfig {
    int radial_shells = 12;
    int points_per_shell = 48;
    std::uint64_t rng_seed = 0;
    int refine_steps = 60;
    /// 0: a singular point makes the supremum +inf. > 0: points with
    /// sigma_min <= max(tol, kSingularThreshold) * sigma_max are skipped and counted.
    double exclusion_tolerance = 0.0;

    friend bool operator==(const SamplerConfig&, const SamplerConfig&) = default;
};

/// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t x);
/// Combines two seeds into one.
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);
/// Named sub-seed, e.g. derive_seed(seed, "sampler").
std::uint64_t derive_seed(std::uint64_t seed, std::string_view name);
/// Engine for one sample slot; independent of how many other slots exist.
std::mt19937_64 slot_engine(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0);

/// Uniformly distributed direction on the unit sphere of C^k (= S^{2k-1}).
CVector random_direction(std::mt19937_64& eng, std::size_t k);
/// Random point of norm < radius in the domain's own norm.
CVector random_point(std::mt19937_64& eng, const DomainSpec& dom);

/// Radius of shell i (1-based, 1..shells): 1 - r/R is geometric from 10^{-3/shells} down to 1e-3.
double shell_radius(int i, int shells, double R);

/// Centre first, then shells 1..radial_shells with points_per_shell points each.
/// Point (shell, j) depends only on (seed, shell, j), so growing points_per_shell
/// only appends points.
std::vector<CVector> shell_samples(const DomainSpec& dom, const CVector& center, const SamplerConfig& cfg);

/// Objective for sample_maximize; nullopt marks an excluded point.
using Objective = std::function<std::optional<double>(const CVector&)>;

struct MaxResult {
    double value = 0.0;
    CVector argmax;
    std::size_t samples_used = 0;
    std::size_t skipped = 0;
};

/// Lower estimate of sup f over {center + z : |z| < R}: evaluates the shell
/// samples (in parallel, index-ordered reduction), then runs cfg.refine_steps
/// of coordinate hill climbing from the best sample.
/// Throws EmptySample when every sample is excluded.
MaxResult sample_maximize(const Objective& f, const DomainSpec& dom, const CVector& center,
                          const SamplerConfig& cfg);

/// Deterministic quasi-uniform directions on S^{2k-1}: Halton points with a seeded
/// Cranley-Patterson shift, Box-Muller to Gaussians, normalized. The first n of
/// count > n points equal the n-point set.
std::vector<CVector> sphere_directions(std::size_t k, std::size_t count, std::uint64_t seed);

} // namespace holo
