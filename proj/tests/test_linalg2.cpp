#include <doctest.h>

#include <cmath>
#include <random>

#include "lzdeph/error.hpp"
#include "lzdeph/linalg2.hpp"
#include "test_support.hpp"

using namespace lzdeph;
using lzdeph::testing::random_general;
using lzdeph::testing::random_hermitian;

TEST_CASE("hs_inner on Pauli matrices") {
    CHECK(hs_inner(Mat2::identity(), Mat2::identity()) == cplx(2.0));
    CHECK(std::abs(hs_inner(Mat2::sigma_x(), Mat2::sigma_y())) == 0.0);
    CHECK(hs_inner(Mat2::sigma_z(), Mat2::sigma_z()) == cplx(2.0));
}

TEST_CASE("hs_inner is conjugate symmetric and positive") {
    std::mt19937_64 rng(7);
    for (int k = 0; k < 200; ++k) {
        const Mat2 a = random_general(rng);
        const Mat2 b = random_general(rng);
        CHECK(std::abs(hs_inner(a, b) - std::conj(hs_inner(b, a))) < 1e-15);
        const cplx self = hs_inner(a, a);
        CHECK(self.imag() == 0.0);
        CHECK(self.real() > 0.0);
        CHECK(std::abs(self.real() - hs_norm(a) * hs_norm(a)) < 1e-14);
    }
}

TEST_CASE("matrix arithmetic") {
    const Mat2 sx = Mat2::sigma_x(), sy = Mat2::sigma_y(), sz = Mat2::sigma_z();
    CHECK(sx * sy == cplx(0, 1) * sz);
    CHECK(commutator(sx, sy) == cplx(0, 2) * sz);
    CHECK(trace(sx * sx) == cplx(2.0));
    CHECK(adjoint(sy) == sy);
    const Mat2 m{1.0, cplx(2, 3), cplx(4, -1), 5.0};
    CHECK(adjoint(m) == Mat2{1.0, cplx(4, 1), cplx(2, -3), 5.0});
    CHECK(hermiticity_defect(m) > 1.0);
}

TEST_CASE("column-stacking vectorization order") {
    const Mat2 m{1.0, 2.0, 3.0, 4.0};
    const Vec4 v = vec(m);
    CHECK(v[0] == cplx(1.0));
    CHECK(v[1] == cplx(3.0));  // rho21
    CHECK(v[2] == cplx(2.0));  // rho12
    CHECK(v[3] == cplx(4.0));
    CHECK(unvec(v) == m);
}

TEST_CASE("HermMat2 rejects non-Hermitian input") {
    CHECK_THROWS_AS(HermMat2(Mat2{1.0, 1.0, 0.0, 1.0}), InvalidArgument);
    CHECK_THROWS_AS(HermMat2(Mat2{cplx(1.0, 1e-10), 0.0, 0.0, 1.0}), InvalidArgument);
    const HermMat2 h(Mat2{2.0, cplx(1, -3), cplx(1, 3), -4.0});
    CHECK(h.a0() == -1.0);
    CHECK(h.ax() == 1.0);
    CHECK(h.ay() == 3.0);
    CHECK(h.az() == 3.0);
}

TEST_CASE("eig_herm2 examples") {
    SUBCASE("sigma_z") {
        const auto e = eig_herm2(HermMat2(Mat2::sigma_z()));
        CHECK(e.e_minus == -1.0);
        CHECK(e.e_plus == 1.0);
        CHECK(hs_norm(e.p_minus.mat() - Mat2{0.0, 0.0, 0.0, 1.0}) < 1e-15);
        CHECK(hs_norm(e.p_plus.mat() - Mat2{1.0, 0.0, 0.0, 0.0}) < 1e-15);
    }
    SUBCASE("half sigma_x") {
        const auto e = eig_herm2(HermMat2(0.5 * Mat2::sigma_x()));
        CHECK(e.e_minus == doctest::Approx(-0.5).epsilon(1e-15));
        CHECK(e.e_plus == doctest::Approx(0.5).epsilon(1e-15));
        CHECK(hs_norm(e.p_plus.mat() - 0.5 * (Mat2::identity() + Mat2::sigma_x())) < 1e-15);
        CHECK(hs_norm(e.p_minus.mat() - 0.5 * (Mat2::identity() - Mat2::sigma_x())) < 1e-15);
    }
    SUBCASE("H(1,1)") {
        // lambda^2 = (s^2 + g0^2) / 4 = 1/2
        const auto e = eig_herm2(HermMat2(0.5 * (Mat2::sigma_z() + Mat2::sigma_x())));
        CHECK(std::abs(e.e_minus + std::sqrt(2.0) / 2) < 1e-15);
        CHECK(std::abs(e.e_plus - std::sqrt(2.0) / 2) < 1e-15);
    }
}

TEST_CASE("eig_herm2 signals degeneracy") {
    CHECK_THROWS_AS(eig_herm2(HermMat2(Mat2::identity())), DegenerateSpectrum);
    CHECK_THROWS_AS(eig_herm2(HermMat2(Mat2::zero())), DegenerateSpectrum);
    CHECK_THROWS_AS(eig_herm2(HermMat2::from_pauli(3.0, 1e-15, 0.0, 0.0)), DegenerateSpectrum);
}

TEST_CASE("eig_herm2 reconstruction and projector algebra (property)") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> scale(-3.0, 3.0);
    const Mat2 id = Mat2::identity();
    for (int k = 0; k < 1000; ++k) {
        const Mat2 a = std::pow(10.0, scale(rng)) * random_hermitian(rng);
        const auto e = eig_herm2(HermMat2(a));
        const Mat2 pm = e.p_minus, pp = e.p_plus;
        const double na = hs_norm(a);
        REQUIRE(e.e_minus <= e.e_plus);
        CHECK(hs_norm(a - e.e_minus * pm - e.e_plus * pp) <= 1e-12 * na);
        CHECK(hs_norm(pm * pm - pm) <= 1e-12);
        CHECK(hs_norm(pp * pp - pp) <= 1e-12);
        CHECK(hs_norm(pp * pm) <= 1e-12);
        CHECK(hs_norm(pp + pm - id) <= 1e-12);
    }
}
