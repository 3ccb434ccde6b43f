#include "holo/algebra.hpp"
#include "holo/errors.hpp"
#include "random_maps.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>

using namespace holo;
using holo::testing::matrix_with_singular_values;
using holo::testing::random_matrix;
using holo::testing::random_unitary;

TEST_CASE("kappa of simple matrices") {
    CHECK(kappa(CMatrix::identity(3)) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(kappa(CMatrix{{2.0, 0.0}, {0.0, 0.5}}) == doctest::Approx(4.0).epsilon(1e-14));
    // (11 + 3 sqrt 13) / 2
    CHECK(std::abs(kappa(CMatrix{{1.0, 3.0}, {0.0, 1.0}}) - 10.908326913195983) < 1e-12);
    CHECK(std::isinf(kappa(CMatrix{{1.0, 2.0}, {2.0, 4.0}})));
    CHECK(std::isinf(kappa(CMatrix(2))));
}

TEST_CASE("singular values of a rotated diagonal") {
    std::mt19937_64 eng(7);
    for (int t = 0; t < 50; ++t) {
        const std::vector<double> s{5.0, 2.0, 0.25};
        const auto sv = singular_values(matrix_with_singular_values(eng, s));
        REQUIRE(sv.size() == 3);
        for (int i = 0; i < 3; ++i) CHECK(std::abs(sv[i] - s[i]) < 1e-12 * s[0]);
    }
}

TEST_CASE("kappa invariants") {
    std::mt19937_64 eng(11);
    for (int t = 0; t < 200; ++t) {
        const std::size_t k = 1 + t % 4;
        const CMatrix A = random_matrix(eng, k);
        const double kA = kappa(A);
        CHECK(kA >= 1.0);
        // unitary invariance
        const CMatrix U = random_unitary(eng, k), V = random_unitary(eng, k);
        CHECK(kappa(U * A * V) == doctest::Approx(kA).epsilon(1e-9));
        // scale invariance
        CHECK(kappa(Complex(0.0, -3.5) * A) == doctest::Approx(kA).epsilon(1e-9));
        // inverse symmetry
        CHECK(kappa(invert(A)) == doctest::Approx(kA).epsilon(1e-8));
        // submultiplicativity
        const CMatrix B = random_matrix(eng, k);
        CHECK(kappa(A * B) <= kA * kappa(B) * (1.0 + 1e-9));
    }
}

TEST_CASE("kappa of unitaries is one") {
    std::mt19937_64 eng(3);
    for (int t = 0; t < 20; ++t) CHECK(std::abs(kappa(random_unitary(eng, 3)) - 1.0) < 1e-12);
}

TEST_CASE("spectral norm matches the largest singular value") {
    std::mt19937_64 eng(5);
    const CMatrix A = matrix_with_singular_values(eng, {3.0, 1.0});
    CHECK(spectral_norm(A) == doctest::Approx(3.0).epsilon(1e-13));
    CHECK(spectral_norm(CMatrix(2)) == 0.0);
}

TEST_CASE("invert") {
    std::mt19937_64 eng(9);
    for (int t = 0; t < 50; ++t) {
        const CMatrix A = random_matrix(eng, 3);
        const CMatrix P = A * invert(A) - CMatrix::identity(3);
        CHECK(P.max_abs() < 1e-10);
    }
    CHECK_THROWS_AS(invert(CMatrix{{1.0, 2.0}, {2.0, 4.0}}), SingularMatrix);
}

TEST_CASE("singular threshold is relative") {
    CHECK(std::isfinite(kappa(CMatrix{{1.0, 0.0}, {0.0, 1e-13}})));
    CHECK(std::isinf(kappa(CMatrix{{1.0, 0.0}, {0.0, 1e-15}})));
    const std::vector<double> sv{2.0, 1.0};
    CHECK(kappa_from_singular_values(sv) == 2.0);
    const std::vector<double> zero{0.0, 0.0};
    CHECK(std::isinf(kappa_from_singular_values(zero)));
}

TEST_CASE("eigen moduli are ascending and bounded by the singular values") {
    std::mt19937_64 eng(13);
    CMatrix T{{3.0, 7.0}, {0.0, Complex(0.0, -0.5)}};
    const auto ev = eigen_moduli(T);
    REQUIRE(ev.size() == 2);
    CHECK(ev[0] == doctest::Approx(0.5));
    CHECK(ev[1] == doctest::Approx(3.0));
    for (int t = 0; t < 100; ++t) {
        const CMatrix A = random_matrix(eng, 3);
        const auto e = eigen_moduli(A);
        const auto s = singular_values(A);
        CHECK(e.front() >= s.back() * (1.0 - 1e-10));
        CHECK(e.back() <= s.front() * (1.0 + 1e-10));
    }
}

TEST_CASE("vector norms and shapes") {
    const CVector z{Complex(3.0, 4.0), 0.0};
    CHECK(z.norm() == doctest::Approx(5.0));
    CHECK(z.max_norm() == doctest::Approx(5.0));
    const CVector big{1e200, 1e200};
    CHECK(std::isfinite(big.norm()));
    CHECK_THROWS_AS(CMatrix::from_rows({{1.0, 2.0}, {3.0}}), DimensionMismatch);
    CVector bad{std::numeric_limits<double>::quiet_NaN()};
    CHECK_FALSE(bad.all_finite());
}
