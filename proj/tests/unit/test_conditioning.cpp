#include "holo/conditioning.hpp"
#include "holo/errors.hpp"
#include "holo/parallel.hpp"
#include "random_maps.hpp"

#include <doctest.h>

#include <cmath>

using namespace holo;

// Reference suprema below were computed independently on dense grids and polished
// with a local optimizer; the sampled estimates are lower bounds.

TEST_CASE("kappa at a point") {
    CHECK(kappa_at(identity(2), CVector{0.3, 0.1}) == doctest::Approx(1.0));
    CHECK(kappa_at(linear(CMatrix{{1.0, 3.0}, {0.0, 1.0}}), CVector{0.0, 0.0}) ==
          doctest::Approx(10.908326913195983).epsilon(1e-12));
    // henon'(0) = [[0, b], [1, 0]]
    CHECK(kappa_at(henon(0.5), CVector{0.0, 0.0}) == doctest::Approx(2.0));
    CHECK(std::isinf(kappa_at(duren_rudin(1.0), CVector{0.0, 0.0})) == false);
    CHECK(std::isinf(kappa_at(linear(CMatrix{{1.0, 1.0}, {1.0, 1.0}}), CVector{0.0, 0.0})));
}

TEST_CASE("sup kappa of linear and unitary maps is constant") {
    std::mt19937_64 eng(4);
    const CMatrix A = testing::random_matrix(eng, 2);
    const DomainSpec dom{DomainShape::Ball, 1.0, 2};
    const auto r = sup_kappa(linear(A), dom, SamplerConfig{});
    CHECK(r.sup_estimate == doctest::Approx(kappa(A)).epsilon(1e-12));
    CHECK(r.norm_name == "spectral");
    CHECK(r.samples_used >= 1 + 12 * 48);
    const auto u = sup_kappa(linear(testing::random_unitary(eng, 2)), dom, SamplerConfig{});
    CHECK(std::abs(u.sup_estimate - 1.0) < 1e-12);
}

TEST_CASE("sup kappa of henon composed with expcoord") {
    const MapExpr m = compose(henon(0.5), exp_coord(0.1, 2));
    const DomainSpec dom{DomainShape::Ball, 0.9, 2};
    const auto r = sup_kappa(m, dom, SamplerConfig{});
    const double reference = 2.335141910187744;
    CHECK(r.sup_estimate <= reference + 1e-9);
    CHECK(r.sup_estimate >= 0.995 * reference);
    CHECK(dom.contains(r.argmax_point));
    CHECK(kappa_at(m, r.argmax_point) == doctest::Approx(r.sup_estimate).epsilon(1e-12));
}

TEST_CASE("one-variable maps have kappa one") {
    const DomainSpec dom{DomainShape::Ball, 1.0, 1};
    for (const char* text : {"(z1^3 + 2*z1)", "expcoord(c=0.7-0.2i, k=1)", "scale(3i, (z1 - 0.25*z1^2))"}) {
        const auto r = sup_kappa(parse(text), dom, SamplerConfig{});
        CHECK_MESSAGE(std::abs(r.sup_estimate - 1.0) <= 1e-12, text);
    }
}

TEST_CASE("more points per shell never lowers the estimate") {
    const MapExpr m = compose(henon(Complex(0.3, 0.2)), exp_coord(0.8, 2));
    const DomainSpec dom{DomainShape::Ball, 1.0, 2};
    double prev = 0.0;
    for (int p : {4, 8, 16, 32, 64}) {
        SamplerConfig cfg;
        cfg.points_per_shell = p;
        cfg.refine_steps = 0;
        const double v = sup_kappa(m, dom, cfg).sup_estimate;
        CHECK(v >= prev);
        prev = v;
    }
}

TEST_CASE("singular points give infinity or are excluded") {
    // (z^2, w) is singular on z = 0
    const MapExpr m = parse("(z1^2, z2)");
    const DomainSpec dom{DomainShape::Ball, 1.0, 2};
    CHECK(std::isinf(sup_kappa(m, dom, SamplerConfig{}).sup_estimate));
    SamplerConfig cfg;
    cfg.exclusion_tolerance = 1e-14;
    const auto r = sup_kappa(m, dom, cfg);
    CHECK(r.skipped_singular >= 1);
    CHECK(std::isfinite(r.sup_estimate));
    CHECK_THROWS_AS(sup_kappa(linear(CMatrix(2)), dom, cfg), EmptySample);
    CHECK_THROWS_AS(sup_kappa(m, DomainSpec{DomainShape::Ball, 1.0, 3}, cfg), DimensionMismatch);
}

TEST_CASE("sup kappa is deterministic across worker counts") {
    const MapExpr m = compose(henon(0.5), exp_coord(0.4, 2));
    const DomainSpec dom{DomainShape::Polydisc, 1.0, 2};
    SamplerConfig cfg;
    cfg.rng_seed = 99;
    set_worker_count(1);
    const auto a = sup_kappa(m, dom, cfg);
    set_worker_count(4);
    const auto b = sup_kappa(m, dom, cfg);
    set_worker_count(1);
    CHECK(a.sup_estimate == b.sup_estimate);
    CHECK(a.argmax_point == b.argmax_point);
    cfg.rng_seed = 100;
    CHECK(sup_kappa(m, dom, cfg).argmax_point != a.argmax_point);
}

TEST_CASE("refined sup") {
    const SamplerConfig cfg;
    // henon(0.5) at the origin: sup over |z| <= 1/2 of |[[2z, 0.5], [1, 0]] [[0, 1], [2, 0]]|
    const double v = refined_sup(henon(0.5), CVector{0.0, 0.0}, cfg);
    CHECK(v <= 1.6180339887501827 + 1e-9);
    CHECK(v >= 1.6180339887501827 - 1e-3);
    CHECK(refined_sup(linear(CMatrix{{3.0, 1.0}, {0.0, 2.0}}), CVector{0.2, 0.0}, cfg) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(refined_sup(henon(0.5), CVector{1.0, 0.0}, cfg), InvalidArgument);
    CHECK_THROWS_AS(refined_sup(parse("(z1^2, z2)"), CVector{0.0, 0.0}, cfg), SingularBasePoint);
}

TEST_CASE("comparability ratio") {
    CHECK(comparability_ratio(linear(CMatrix{{4.0, 100.0}, {0.0, 2.0}}), CVector{0.0, 0.0}) == doctest::Approx(2.0));
    CHECK_THROWS_AS(comparability_ratio(parse("(z1^2, z2)"), CVector{0.0, 0.0}), SingularJacobian);
    std::mt19937_64 eng(8);
    for (const auto& m : testing::builtin_instances()) {
        const CVector z = testing::random_ball_point(eng, 2, 1.0);
        CHECK(comparability_ratio(m, z) <= kappa_at(m, z) + 1e-10);
    }
}
