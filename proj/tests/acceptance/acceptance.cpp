// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero when any criterion fails.

#include "holo/conditioning.hpp"
#include "holo/counterexamples.hpp"
#include "holo/errors.hpp"
#include "holo/experiment.hpp"
#include "holo/landau.hpp"
#include "holo/parallel.hpp"
#include "holo/renorm.hpp"
#include "random_maps.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <sstream>
#include <string>

using namespace holo;
namespace ht = holo::testing;

namespace {

struct Verdict {
    bool pass = false;
    std::string detail;
};

class Stopwatch {
public:
    double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count(); }

private:
    std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

// Random k = 1 map with a nonvanishing derivative on the unit disc:
// z + sum a_j z^j with sum j |a_j| < 1, an exponential, or a composition of both.
MapExpr random_one_variable_map(std::mt19937_64& eng, int i) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const unsigned degree = 2 + static_cast<unsigned>(i % 4);
    std::vector<Polynomial::Term> terms{{{1}, Complex(1.0 + u(eng), u(eng))}};
    double budget = 0.9 * std::abs(terms[0].coeff);
    for (unsigned j = 2; j <= degree; ++j) {
        const double mag = budget * 0.5 * (1.0 + u(eng)) / j;
        terms.push_back({{j}, std::polar(mag, 3.2 * u(eng))});
        budget -= j * mag;
    }
    const MapExpr p = poly_coord({Polynomial::from_terms(1, terms)});
    const MapExpr e = exp_coord(Complex(2.0 * u(eng), 2.0 * u(eng)), 1);
    switch (i % 3) {
    case 0: return p;
    case 1: return e;
    default: return compose(e, p);
    }
}

Verdict criterion1() {
    Stopwatch sw;
    std::mt19937_64 eng(101);
    double worst = 0.0;
    const DomainSpec dom{DomainShape::Ball, 1.0, 1};
    for (int i = 0; i < 20; ++i) {
        const MapExpr m = random_one_variable_map(eng, i);
        SamplerConfig cfg;
        cfg.rng_seed = static_cast<std::uint64_t>(i);
        worst = std::max(worst, std::abs(sup_kappa(m, dom, cfg).sup_estimate - 1.0));
    }
    const double t = sw.seconds();
    return {worst <= 1e-12 && t < 10.0, "max |sup_kappa - 1| = " + fmt(worst) + " over 20 maps, " + fmt(t) + " s"};
}

Verdict criterion2() {
    Stopwatch sw;
    std::mt19937_64 eng(202);
    double worst = -1e300;
    std::size_t checked = 0, singular = 0;
    auto check = [&](const MapExpr& m, const CVector& z) {
        try {
            worst = std::max(worst, comparability_ratio(m, z) - kappa_at(m, z));
            ++checked;
        } catch (const SingularJacobian&) {
            ++singular; // kappa is +inf there
        }
    };
    for (int i = 0; i < 10000; ++i) {
        const std::size_t k = 1 + i % 4;
        check(linear(ht::random_matrix(eng, k)), CVector::zeros(k));
    }
    for (const auto& m : ht::builtin_instances())
        for (int i = 0; i < 1000; ++i) check(m, ht::random_ball_point(eng, m.dim(), 1.0));
    const double t = sw.seconds();
    return {worst <= 1e-10 && t < 30.0,
            "max(ratio - kappa) = " + fmt(worst) + " on " + std::to_string(checked) + " Jacobians (" +
                std::to_string(singular) + " singular), " + fmt(t) + " s"};
}

Verdict criterion3() {
    std::vector<MapExpr> family = ht::builtin_instances();
    family.push_back(compose(henon(0.5), exp_coord(2.0, 2)));
    family.push_back(dilate(compose(henon(0.5), exp_coord(2.0, 2)), 0.5));
    double worst = 0.0;
    int steps = 0;
    std::string skipped;
    for (const auto& m : family) {
        try {
            const RenormStep s = bz_step(m, 4.0, RenormConfig{});
            worst = std::max(worst, (jacobian(s.psi, CVector::zeros(2)).jacobian - CMatrix::identity(2)).max_abs());
            ++steps;
        } catch (const SingularJacobianAtBase&) {
            skipped += " " + print(m);
        }
    }
    return {worst <= 1e-10 && steps > 0,
            "max |psi'(0) - I| = " + fmt(worst) + " over " + std::to_string(steps) + " maps" +
                (skipped.empty() ? "" : "; singular base:" + skipped)};
}

Verdict criterion4() {
    RenormConfig cfg;
    cfg.check_radius_factor = 1.0;
    std::vector<RenormStep> steps;
    double worst = 0.0;
    bool identity_maps = true;
    for (int n = 1; n <= 20; ++n) {
        steps.push_back(bz_step(linear(CMatrix::scalar(2, n)), 1.0, cfg));
        worst = std::max(worst, steps.back().check.max_psi_derivative);
        identity_maps = identity_maps && steps.back().check.check_radius == steps.back().validity_radius;
    }
    const auto d = convergence_diagnostic(steps, 0.5, 5);
    const double dmax = *std::max_element(d.begin(), d.end());
    return {worst <= 2.0 + 1e-6 && dmax == 0.0 && identity_maps,
            "max |psi_n'| = " + fmt(worst) + " on |z| <= lambda_n/2, max d_n = " + fmt(dmax)};
}

Verdict criterion5() {
    Stopwatch sw;
    const DomainSpec ball{DomainShape::Ball, 1.0, 2};
    const double rid = landau_estimate(identity(2), ball, LandauConfig{}).r_lo;
    std::mt19937_64 eng(505);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
        const double smax = 0.5 + 2.5 * u(eng);
        const double k = std::pow(100.0, u(eng));
        const CMatrix A = ht::matrix_with_singular_values(eng, {smax, smax / k});
        const double smin = singular_values(A).back();
        const double r = landau_estimate(linear(A), ball, LandauConfig{}).r_lo;
        worst = std::max(worst, std::abs(r - smin) / smin);
    }
    const double t = sw.seconds();
    return {rid >= 0.99 && worst <= 0.02 && t < 60.0,
            "identity r_lo = " + fmt(rid) + ", max |r_lo - sigma_min|/sigma_min = " + fmt(worst) +
                " over 10 linear maps, " + fmt(t) + " s"};
}

std::vector<std::pair<Complex, Complex>> seeded_centres(std::uint64_t seed, int count) {
    std::mt19937_64 eng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<std::pair<Complex, Complex>> out;
    for (int i = 0; i < count; ++i) out.emplace_back(Complex(u(eng), u(eng)), Complex(u(eng), u(eng)));
    return out;
}

Verdict criterion6() {
    std::string detail;
    bool ok = true;
    for (int n : {3, 5, 10}) {
        try {
            const auto b = certify_no_ball(harris(n), seeded_centres(600 + n, 100));
            const bool all = std::all_of(b.harris.begin(), b.harris.end(), [](const auto& w) { return w.verify(); });
            ok = ok && all && b.harris.size() == 100;
            detail += "n=" + std::to_string(n) + " bound " + fmt(b.bound) + " (" + std::to_string(b.harris.size()) +
                      " witnesses); ";
        } catch (const Error& e) {
            ok = false;
            detail += "n=" + std::to_string(n) + " failed: " + e.what() + "; ";
        }
    }
    const double r = landau_estimate(harris(3), DomainSpec{DomainShape::Polydisc, 1.0, 2}, LandauConfig{}).r_lo;
    ok = ok && r <= std::sqrt(2.0 / 3.0) + 0.05;
    return {ok, detail + "harris(3) r_lo = " + fmt(r) + " <= " + fmt(std::sqrt(2.0 / 3.0) + 0.05)};
}

Verdict criterion7() {
    double worst_margin = 1e300, worst_parseval = 0.0;
    for (double delta : {0.5, 1.0, 2.0}) {
        for (const auto& [u, v] : seeded_centres(700 + static_cast<std::uint64_t>(delta * 10), 100)) {
            const auto w = duren_rudin_witness(delta, u, v);
            worst_margin = std::min(worst_margin, w.circle_value - delta * delta);
            const double exact = parseval_exact(delta, u, v);
            worst_parseval = std::max(worst_parseval, std::abs(parseval_grid_mean(delta, u, v) - exact) / exact);
        }
    }
    return {worst_margin >= -1e-9 && worst_parseval <= 1e-8,
            "min(circle_value - delta^2) = " + fmt(worst_margin) + ", max Parseval relative error = " +
                fmt(worst_parseval)};
}

Verdict criterion8() {
    const DomainSpec ball{DomainShape::Ball, 1.0, 2};
    const std::vector<double> R{1.0, 2.0, 4.0, 8.0};
    const auto id = rescaled_growth(identity(2), R, ball, LandauConfig{});
    double worst = 0.0;
    for (const auto& p : id) worst = std::max(worst, std::abs(p.r_times_rlo - p.R) / p.R);
    const auto ex = rescaled_growth(exp_coord(0.1, 2), R, ball, LandauConfig{});
    bool monotone = true;
    std::string series;
    for (std::size_t i = 0; i < ex.size(); ++i) {
        if (i > 0 && ex[i].r_times_rlo < ex[i - 1].r_times_rlo) monotone = false;
        series += (i ? ", " : "") + fmt(ex[i].r_times_rlo);
    }
    return {worst <= 0.01 && monotone,
            "identity max relative error " + fmt(worst) + "; expcoord(0.1) series " + series};
}

Verdict criterion9() {
    std::mt19937_64 eng(909);
    double worst = 0.0;
    std::size_t points = 0;
    for (const auto& m : ht::builtin_instances())
        for (int i = 0; i < 1000; ++i) {
            const CVector z = ht::random_ball_point(eng, 2, 1.0);
            worst = std::max(worst, (jacobian(m, z).jacobian - ht::finite_difference_jacobian(m, z, 1e-5)).max_abs());
            ++points;
        }
    for (int i = 0; i < 1000; ++i) {
        const MapExpr m = ht::random_composition(eng, 1 + i % 4);
        const CVector z = ht::random_ball_point(eng, 2, 1.0);
        worst = std::max(worst, (jacobian(m, z).jacobian - ht::finite_difference_jacobian(m, z, 1e-5)).max_abs());
        ++points;
    }
    return {worst <= 1e-7, "max |J_dual - J_fd| = " + fmt(worst) + " at " + std::to_string(points) + " points"};
}

Verdict criterion10() {
    std::vector<std::filesystem::path> configs;
    for (const auto& e : std::filesystem::directory_iterator(HOLO_CONFIG_DIR))
        if (e.path().extension() == ".json") configs.push_back(e.path());
    std::sort(configs.begin(), configs.end());
    bool ok = !configs.empty();
    std::string bad;
    for (const auto& path : configs) {
        const ExperimentConfig cfg = load_config(path);
        set_worker_count(1);
        const auto first = run_experiment(cfg);
        const std::string a = first.report["payload"].dump();
        const std::string b = run_experiment(cfg).report["payload"].dump();
        set_worker_count(4);
        const std::string c = run_experiment(cfg).report["payload"].dump();
        set_worker_count(1);
        if (first.exit_code != 0 || a != b || a != c) {
            ok = false;
            bad += " " + path.filename().string();
        }
    }
    return {ok, std::to_string(configs.size()) + " configs, 1 and 4 workers" + (bad.empty() ? "" : "; differing:" + bad)};
}

} // namespace

int main() {
    set_worker_count(1);
    const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
        {"one-variable maps have sup kappa 1", criterion1},
        {"eigenvalue ratio bounded by kappa", criterion2},
        {"renormalized maps satisfy psi'(0) = I", criterion3},
        {"derivative bound and exact identity limit for n I", criterion4},
        {"inscribed radius of identity and linear maps", criterion5},
        {"Harris certificates and Landau bound", criterion6},
        {"Duren-Rudin witnesses and Parseval identity", criterion7},
        {"rescaled growth", criterion8},
        {"dual-number Jacobians against finite differences", criterion9},
        {"byte-identical report payloads", criterion10},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Verdict v;
        try {
            v = criteria[i].second();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        if (!v.pass) ++failures;
        std::printf("%s criterion %zu: %s | %s\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                    v.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
