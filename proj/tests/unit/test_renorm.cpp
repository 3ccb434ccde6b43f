#include "holo/errors.hpp"
#include "holo/parallel.hpp"
#include "holo/renorm.hpp"
#include "random_maps.hpp"

#include <doctest.h>

#include <cmath>

using namespace holo;

namespace {

MapExpr g(Complex b, Complex c) { return compose(henon(b), exp_coord(c, 2)); }

} // namespace

TEST_CASE("lambda of linear maps") {
    for (double n : {1.0, 2.5, 7.0}) {
        const auto r = lambda_functional(linear(CMatrix::scalar(2, n)), SamplerConfig{});
        CHECK(r.lambda == doctest::Approx(n).epsilon(1e-15));
        CHECK(r.a_star == CVector::zeros(2));
    }
}

TEST_CASE("lambda of the henon-exponential map") {
    // independent reference: sup (1-|z|) |g'(z)| for g = henon(0.5) o expcoord(2)
    const double reference = 15.882450019009141;
    const auto r = lambda_functional(g(0.5, 2.0), SamplerConfig{});
    CHECK(r.lambda <= reference + 1e-9);
    CHECK(r.lambda >= 0.99 * reference);
    CHECK(r.a_star.norm() < 1.0);
}

TEST_CASE("lambda of dilated henon-exponential maps approaches |g'(0)|") {
    const double reference2 = 2.8279004610329017;
    const double r2 = lambda_functional(dilate(g(0.5, 2.0), 0.5), SamplerConfig{}).lambda;
    CHECK(r2 <= reference2 + 1e-9);
    CHECK(r2 >= 0.99 * reference2);
    for (int n : {3, 4, 5}) {
        const double r = lambda_functional(dilate(g(0.5, 2.0), 1.0 / n), SamplerConfig{}).lambda;
        CHECK(r <= 2.0 + 1e-9);
        CHECK(r >= 0.99 * 2.0);
    }
}

TEST_CASE("bz step normalizes the derivative") {
    const RenormConfig cfg;
    for (const auto& m : {g(0.5, 2.0), henon(0.5), harris(3), duren_rudin(0.5), exp_coord(0.1, 2)}) {
        const RenormStep s = bz_step(m, 4.0, cfg);
        const CMatrix J = jacobian(s.psi, CVector::zeros(2)).jacobian;
        CHECK_MESSAGE((J - CMatrix::identity(2)).max_abs() < 1e-10, print(m));
        CHECK(s.validity_radius == doctest::Approx(s.lambda / 8.0));
        CHECK(eval(s.psi, CVector::zeros(2)) == eval(m, s.base_point));
    }
}

TEST_CASE("bz step on multiples of the identity") {
    RenormConfig cfg;
    cfg.check_radius_factor = 1.0;
    for (int n = 1; n <= 20; ++n) {
        const RenormStep s = bz_step(linear(CMatrix::scalar(2, n)), 1.0, cfg);
        CHECK(s.lambda == doctest::Approx(n));
        CHECK(s.check.pass());
        CHECK(s.check.max_psi_derivative <= 2.0 + 1e-6);
        CHECK(s.check.check_radius == doctest::Approx(n / 2.0));
        CHECK(print(s.psi) == "linear(A=[[1,0],[0,1]])");
    }
}

TEST_CASE("bound check flags violations") {
    // C = 1 is far too small for the henon-exponential map
    const RenormStep s = bz_step(g(0.5, 2.0), 1.0, RenormConfig{});
    CHECK_FALSE(s.check.derivative_pass);
    REQUIRE(s.check.offending_point.has_value());
    CHECK(s.check.offending_point->norm() <= s.check.check_radius * (1.0 + 1e-12));
    CHECK_THROWS_AS(bz_step(henon(0.5), 0.5, RenormConfig{}), InvalidArgument);
}

TEST_CASE("singular base jacobian") {
    CHECK_THROWS_AS(bz_step(linear(CMatrix{{1.0, 1.0}, {1.0, 1.0}}), 1.0, RenormConfig{}), SingularJacobianAtBase);
}

TEST_CASE("bz sequence reports per-element errors") {
    const std::vector<int> ns{1, 2, 3};
    const auto out = bz_sequence(
        [](int n) {
            if (n == 2) return linear(CMatrix{{1.0, 1.0}, {1.0, 1.0}});
            return linear(CMatrix::scalar(2, n));
        },
        ns, 1.0, RenormConfig{});
    REQUIRE(out.size() == 3);
    CHECK(out[0].step.has_value());
    CHECK_FALSE(out[1].step.has_value());
    CHECK_FALSE(out[1].error.empty());
    CHECK(out[2].step->lambda == doctest::Approx(3.0));
}

TEST_CASE("convergence diagnostic of a quadratic family") {
    // Phi_n = (z1 + z1^2/n, z2) has Phi_n'(0) = I, so psi_n = Phi_n and
    // psi_{n+1} - psi_n = (1/(n+1) - 1/n) z1^2, maximal on the z1 axis.
    std::vector<RenormStep> steps;
    const double radius = 0.25;
    for (int n = 1; n <= 4; ++n) {
        const MapExpr m = parse("(z1 + " + std::to_string(1.0 / n) + "*z1^2, z2)");
        // centre the step at the origin by hand
        const Jet j = jacobian(m, CVector::zeros(2));
        steps.push_back(RenormStep{1.0, CVector::zeros(2), invert(j.jacobian),
                                   reparametrize(m, CVector::zeros(2), invert(j.jacobian)), 1.0, 0.5, {}});
    }
    const auto d = convergence_diagnostic(steps, radius, 5);
    REQUIRE(d.size() == 3);
    for (int n = 1; n <= 3; ++n) {
        const double coeff_diff = std::abs(std::stod(std::to_string(1.0 / (n + 1))) - std::stod(std::to_string(1.0 / n)));
        CHECK(d[n - 1] == doctest::Approx(coeff_diff * radius * radius).epsilon(1e-9));
    }
    CHECK_THROWS_AS(convergence_diagnostic(steps, 0.6, 5), RadiusExceedsValidity);
}

TEST_CASE("ball grid") {
    const auto pts = ball_grid(2, 1.0, 5);
    for (const auto& z : pts) CHECK(z.norm() <= 1.0 + 1e-15);
    CHECK(pts.size() > 1);
    CHECK(std::find(pts.begin(), pts.end(), CVector::zeros(2)) != pts.end());
}

TEST_CASE("bz step is deterministic across worker counts") {
    set_worker_count(1);
    const RenormStep a = bz_step(g(0.5, 2.0), 8.0, RenormConfig{});
    set_worker_count(3);
    const RenormStep b = bz_step(g(0.5, 2.0), 8.0, RenormConfig{});
    set_worker_count(1);
    CHECK(a.lambda == b.lambda);
    CHECK(a.base_point == b.base_point);
    CHECK(a.check.max_psi_derivative == b.check.max_psi_derivative);
}

TEST_CASE("bz step of the identity") {
    const RenormStep s = bz_step(identity(2), 1.0, RenormConfig{});
    CHECK(s.lambda == 1.0);
    CHECK(s.validity_radius == 0.5);
    CHECK(s.base_point == CVector::zeros(2));
    const CVector z{0.1, Complex(0.0, -0.3)};
    CHECK(eval(s.psi, z) == z);
}
