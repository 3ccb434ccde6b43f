#include "holo/sampling.hpp"

#include "holo/errors.hpp"
#include "holo/parallel.hpp"

#include <cmath>
#include <numbers>

namespace holo {

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) { return mix64(mix64(a) ^ (b + 0x632be59bd9b4e019ULL)); }

std::uint64_t derive_seed(std::uint64_t seed, std::string_view name) {
    std::uint64_t h = 0xcbf29ce484222325ULL; // FNV-1a
    for (char c : name) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return mix_seed(seed, h);
}

std::mt19937_64 slot_engine(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    return std::mt19937_64(mix_seed(mix_seed(seed, a), b));
}

CVector random_direction(std::mt19937_64& eng, std::size_t k) {
    std::normal_distribution<double> gauss;
    CVector u(k);
    double n = 0.0;
    do {
        for (std::size_t i = 0; i < k; ++i) u[i] = Complex(gauss(eng), gauss(eng));
        n = u.norm();
    } while (n < 1e-12);
    return (1.0 / n) * u;
}

CVector random_point(std::mt19937_64& eng, const DomainSpec& dom) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const std::size_t k = dom.dim;
    if (dom.shape == DomainShape::Ball) {
        const CVector u = random_direction(eng, k);
        const double r = dom.radius * std::pow(unif(eng), 1.0 / (2.0 * static_cast<double>(k)));
        return (r * 0.999999) * u;
    }
    CVector z(k);
    for (std::size_t i = 0; i < k; ++i) {
        const double r = dom.radius * std::sqrt(unif(eng)) * 0.999999;
        const double t = 2.0 * std::numbers::pi * unif(eng);
        z[i] = std::polar(r, t);
    }
    return z;
}

double shell_radius(int i, int shells, double R) {
    const double q = std::pow(10.0, -3.0 * static_cast<double>(i) / static_cast<double>(shells));
    return R * (1.0 - q);
}

std::vector<CVector> shell_samples(const DomainSpec& dom, const CVector& center, const SamplerConfig& cfg) {
    if (center.size() != dom.dim) throw DimensionMismatch(dom.dim, center.size(), "sampler centre");
    std::vector<CVector> pts;
    pts.reserve(1 + static_cast<std::size_t>(std::max(0, cfg.radial_shells)) *
                        static_cast<std::size_t>(std::max(0, cfg.points_per_shell)));
    pts.push_back(center);
    for (int s = 1; s <= cfg.radial_shells; ++s) {
        const double r = shell_radius(s, cfg.radial_shells, dom.radius);
        for (int j = 0; j < cfg.points_per_shell; ++j) {
            auto eng = slot_engine(cfg.rng_seed, static_cast<std::uint64_t>(s), static_cast<std::uint64_t>(j));
            CVector u = random_direction(eng, dom.dim);
            // rescale so the point sits on the shell in the domain's own norm
            u = (1.0 / dom.norm(u)) * u;
            pts.push_back(center + r * u);
        }
    }
    return pts;
}

namespace {

// 2k real coordinates: even index -> real part, odd -> imaginary part
CVector nudge(const CVector& z, std::size_t axis, double h) {
    CVector w = z;
    w[axis / 2] += (axis % 2 == 0) ? Complex(h, 0.0) : Complex(0.0, h);
    return w;
}

} // namespace

MaxResult sample_maximize(const Objective& f, const DomainSpec& dom, const CVector& center,
                          const SamplerConfig& cfg) {
    const auto pts = shell_samples(dom, center, cfg);
    std::vector<std::optional<double>> vals(pts.size());
    parallel_for(pts.size(), [&](std::size_t i) { vals[i] = f(pts[i]); });

    MaxResult res;
    res.samples_used = pts.size();
    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (!vals[i]) {
            ++res.skipped;
            continue;
        }
        if (!best || *vals[i] > *vals[*best]) best = i;
    }
    if (!best) throw EmptySample("every sample point was excluded");
    res.value = *vals[*best];
    res.argmax = pts[*best];
    if (std::isinf(res.value)) return res;

    // moves leaving the domain are pulled back just inside its boundary
    const double rim = dom.radius * (1.0 - 1e-9);
    auto project = [&](CVector z) -> CVector {
        CVector d = z - center;
        if (dom.shape == DomainShape::Ball) {
            const double r = d.norm();
            if (r >= rim) d *= rim / r;
        } else {
            for (auto& x : d)
                if (std::abs(x) >= rim) x *= rim / std::abs(x);
        }
        return center + d;
    };
    double h = 0.05 * dom.radius;
    const std::size_t axes = 2 * dom.dim;
    for (int step = 0; step < cfg.refine_steps; ++step) {
        double best_val = res.value;
        std::optional<CVector> best_pt;
        for (std::size_t a = 0; a < axes; ++a) {
            for (double sgn : {1.0, -1.0}) {
                CVector cand = project(nudge(res.argmax, a, sgn * h));
                if (cand == res.argmax) continue;
                const auto v = f(cand);
                ++res.samples_used;
                if (!v) {
                    ++res.skipped;
                    continue;
                }
                if (*v > best_val) {
                    best_val = *v;
                    best_pt = std::move(cand);
                }
            }
        }
        if (best_pt) {
            res.value = best_val;
            res.argmax = std::move(*best_pt);
            if (std::isinf(res.value)) break;
        } else {
            h *= 0.5;
        }
    }
    return res;
}

std::vector<CVector> sphere_directions(std::size_t k, std::size_t count, std::uint64_t seed) {
    static constexpr unsigned primes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37,
                                          41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89};
    const std::size_t dims = 2 * k;
    if (dims > std::size(primes)) throw InvalidArgument("sphere_directions: dimension too large");
    std::vector<double> shift(dims);
    auto eng = slot_engine(seed, 0x5348u);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (auto& s : shift) s = unif(eng);

    auto radical_inverse = [](std::uint64_t i, unsigned base) {
        double f = 1.0, r = 0.0;
        while (i) {
            f /= base;
            r += f * static_cast<double>(i % base);
            i /= base;
        }
        return r;
    };

    std::vector<CVector> out;
    out.reserve(count);
    std::vector<double> x(dims);
    for (std::size_t n = 0; n < count; ++n) {
        for (std::size_t d = 0; d < dims; ++d) {
            double u = radical_inverse(n + 1, primes[d]) + shift[d];
            u -= std::floor(u);
            x[d] = std::clamp(u, 1e-12, 1.0 - 1e-12);
        }
        CVector v(k);
        for (std::size_t i = 0; i < k; ++i) {
            // Box-Muller on the pair (x[2i], x[2i+1])
            const double rad = std::sqrt(-2.0 * std::log(x[2 * i]));
            const double ang = 2.0 * std::numbers::pi * x[2 * i + 1];
            v[i] = std::polar(rad, ang);
        }
        const double nv = v.norm();
        out.push_back((1.0 / nv) * v);
    }
    return out;
}

} // namespace holo
