#include "holo/counterexamples.hpp"
#include "holo/errors.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace holo;

TEST_CASE("harris witness aligns with beta0") {
    const auto w = harris_witness(5, 0.7, 0.0, 0.3);
    CHECK(w.verify());
    CHECK(std::abs(w.zeta) < 0.7);
    CHECK(std::arg(w.zeta) == doctest::Approx(0.0));
    // s = 0.99: 5 * 0.693 * (0.6 + 0.693)
    CHECK(w.violation == doctest::Approx(5 * 0.693 * 1.293).epsilon(1e-12));
    // independent sweep over |zeta| < delta: 4.5144 < sup = 4.55
    CHECK(w.violation <= 4.55);
    CHECK(w.violation >= 4.514367212005612 - 0.05);
}

TEST_CASE("harris witness near the threshold") {
    const double delta = std::sqrt(2.0 / 3.0) * (1.0 + 1e-9);
    const auto w = harris_witness(3, delta, Complex(0.4, 0.1), 0.0);
    CHECK(w.verify());
    CHECK(std::abs(w.zeta) > 0.99 * delta);
    CHECK_THROWS_AS(harris_witness(3, std::sqrt(2.0 / 3.0) * 0.999, 0.0, 0.0), PreconditionFailed);
}

TEST_CASE("tampered harris witness fails") {
    auto w = harris_witness(5, 0.7, 0.0, Complex(0.0, 0.3));
    CHECK(w.verify());
    w.zeta *= 0.1;
    CHECK_FALSE(w.verify());
}

TEST_CASE("duren-rudin witness") {
    const auto w = duren_rudin_witness(0.5, Complex(0.2, 0.1), -0.3);
    CHECK(w.verify());
    CHECK(w.circle_value >= 0.25);
    CHECK(w.circle_value == doctest::Approx(0.5808247743283625).epsilon(1e-12));
    CHECK(w.theta_star == doctest::Approx(0.22696325424547314).epsilon(1e-5));
    CHECK_THROWS_AS(duren_rudin_witness(0.0, 0.0, 0.0), InvalidArgument);
}

TEST_CASE("parseval mean square") {
    CHECK(parseval_exact(0.5, Complex(0.2, 0.1), -0.3) == doctest::Approx(0.125125).epsilon(1e-14));
    std::mt19937_64 eng(12);
    std::normal_distribution<double> g;
    for (int t = 0; t < 50; ++t) {
        const double delta = 0.25 + std::abs(g(eng));
        const Complex u(g(eng), g(eng)), v(g(eng), g(eng));
        const double exact = parseval_exact(delta, u, v);
        CHECK(std::abs(parseval_grid_mean(delta, u, v) - exact) <= 1e-8 * exact);
        CHECK(exact >= std::pow(delta, 4));
    }
}

TEST_CASE("certify no ball") {
    const std::vector<std::pair<Complex, Complex>> centres{{0.0, 0.0}, {Complex(0.5, -0.5), 0.9}, {2.0, Complex(0.0, 3.0)}};
    const auto h = certify_no_ball(harris(10), centres);
    CHECK(h.bound == doctest::Approx(std::sqrt(0.2)));
    CHECK(h.label == "certified");
    CHECK(h.harris.size() == 3);
    CHECK(h.centers_checked == 3);
    const auto d = certify_no_ball(duren_rudin(2.0), centres);
    CHECK(d.bound == 2.0);
    CHECK(d.duren_rudin.size() == 3);
    CHECK_THROWS_AS(certify_no_ball(henon(0.5), centres), InvalidArgument);
    CHECK_THROWS_AS(certify_no_ball(harris(3), {}), InvalidArgument);
}
