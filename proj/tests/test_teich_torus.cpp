#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "teich/sweeps.hpp"
#include "teich/teich_torus.hpp"

using namespace teich;

namespace {

const TorusPoint kI = TorusPoint::square();

} // namespace

TEST_CASE("torus point validation") {
    CHECK_THROWS_AS(TorusPoint(0.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(TorusPoint(0.0, -1.0), std::domain_error);
    CHECK_THROWS_AS(TorusPoint(INFINITY, 1.0), std::domain_error);
    CHECK_NOTHROW(TorusPoint(-3.0, 1e-300));
}

TEST_CASE("surface type") {
    const auto s = SurfaceType::punctured_torus();
    CHECK(s.complexity() == 1);
    CHECK(s.mf_dimension() == 2);
    CHECK(SurfaceType(2, 0).complexity() == 3);
    CHECK_THROWS(SurfaceType(0, 2));
}

TEST_CASE("extremal length examples") {
    CHECK(extremal_length(kI, MeasuredFoliation(1, 0)) == 1.0);
    CHECK(extremal_length(TorusPoint(0, 2), MeasuredFoliation(1, 0)) == 2.0);
    const TorusPoint x(0.3, 0.7);
    const MeasuredFoliation f(2, -1);
    CHECK(extremal_length(x, f.scaled(3.0)) == doctest::Approx(9.0 * extremal_length(x, f)).epsilon(1e-14));
    CHECK_THROWS_AS(extremal_length(kI, MeasuredFoliation::zero()), std::domain_error);
    CHECK(extremal_length(x, ProjectiveClass(-0.5)) == extremal_length(x, MeasuredFoliation(1, -0.5)));
    CHECK(extremal_length(x, ProjectiveClass::infinity()) == extremal_length(x, MeasuredFoliation(0, 1)));
}

TEST_CASE("hubbard-masur differential") {
    const auto q01 = hubbard_masur(kI, {0, 1});
    CHECK(q01.coeff.real() == doctest::Approx(-1.0));
    CHECK(q01.coeff.imag() == doctest::Approx(0.0));
    CHECK(q01.norm() == doctest::Approx(1.0));
    const auto q10 = hubbard_masur(kI, {1, 0});
    CHECK(q10.coeff.real() == doctest::Approx(1.0));
    CHECK(q10.norm() == doctest::Approx(1.0));
    CHECK_THROWS_AS(hubbard_masur(kI, MeasuredFoliation::zero()), std::domain_error);

    std::mt19937_64 g(21);
    for (int k = 0; k < 10000; ++k) {
        const TorusPoint x = sweeps::random_point(g);
        const auto f = sweeps::random_foliation(g);
        CHECK(hubbard_masur(x, f).norm() == doctest::Approx(extremal_length(x, f)).epsilon(1e-12));
    }
}

TEST_CASE("teichmueller distance examples") {
    const TorusPoint x(0.4, 1.3);
    CHECK(teich_distance(x, x) == 0.0);
    CHECK(teich_distance(kI, TorusPoint(0, 2)) == doctest::Approx(0.5 * std::log(2.0)).epsilon(1e-15));
    CHECK(teich_distance(kI, TorusPoint(0, 2), DistanceMethod::kerckhoff_sup) ==
          doctest::Approx(0.5 * std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("kerckhoff sup examples") {
    const auto s = kerckhoff_sup(kI, TorusPoint(0, 2));
    CHECK(s.ratio == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(std::abs(s.maximizer.angle() - ProjectiveClass::infinity().angle()) <= 1e-6);
    const TorusPoint x(-1.2, 0.3);
    CHECK(kerckhoff_sup(x, x).ratio == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("distance properties on random pairs") {
    std::mt19937_64 g(22);
    for (int k = 0; k < 2000; ++k) {
        const TorusPoint x = sweeps::random_point(g), y = sweeps::random_point(g), z = sweeps::random_point(g);
        const double dxy = teich_distance(x, y);
        CHECK(dxy == teich_distance(y, x));
        CHECK(dxy <= teich_distance(x, z) + teich_distance(z, y) + 1e-12);
        const auto a = kerckhoff_sup(x, y), b = kerckhoff_sup(y, x);
        CHECK(a.ratio >= 1.0);
        CHECK(a.ratio * b.ratio >= 1.0);
        CHECK(0.5 * std::log(a.ratio) == doctest::Approx(dxy).epsilon(1e-9));
    }
}

TEST_CASE("green function") {
    const TorusPoint x(0.5, 2.0);
    CHECK(green(x, x).is_pole());
    CHECK_THROWS_AS(green(x, x).value(), std::domain_error);
    CHECK(green(kI, TorusPoint(0, 2)).value() == doctest::Approx(std::log(1.0 / 3.0)).epsilon(1e-14));
    // far apart the value stays finite and nonzero
    const auto far = green(kI, TorusPoint(0, 1e-12));
    CHECK_FALSE(far.is_pole());
    CHECK(far.value() < 0.0);

    std::mt19937_64 g(23);
    for (int k = 0; k < 10000; ++k) {
        const TorusPoint a = sweeps::random_point(g), b = sweeps::random_point(g);
        CHECK(green(a, b).value() == doctest::Approx(sweeps::log_abs_cayley(a, b)).epsilon(1e-10));
        CHECK(green(a, b).value() < 0.0);
    }
}

TEST_CASE("cayley map") {
    const TorusPoint c(0.2, 0.8);
    CHECK(std::abs(cayley(c, c.z())) < 1e-15);
    const std::complex<double> z(-1.0, 3.0);
    CHECK(std::abs(cayley_inverse(c, cayley(c, z)) - z) < 1e-14);
    CHECK(std::abs(cayley(c, z)) < 1.0);
    CHECK(std::abs(std::abs(cayley(c, {5.0, 0.0})) - 1.0) < 1e-15);
}

TEST_CASE("gromov product and exp pairing") {
    std::mt19937_64 g(24);
    for (int k = 0; k < 1000; ++k) {
        const TorusPoint y0 = sweeps::random_point(g), x = sweeps::random_point(g), y = sweeps::random_point(g);
        CHECK(exp_pairing(y0, y0, x) == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(exp_pairing(y0, x, y) == exp_pairing(y0, y, x));
        CHECK(gromov_product(y0, x, y) >= 0.0);
        const double e = exp_pairing(y0, x, y);
        CHECK(e > 0.0);
        CHECK(e <= 1.0);
    }
}

TEST_CASE("boundary pairings") {
    const ProjectiveClass u(0.7);
    CHECK(boundary_pairing_bb(kI, u, u) == 0.0);
    CHECK(boundary_pairing_bb(kI, ProjectiveClass(0.0), ProjectiveClass::infinity()) == doctest::Approx(1.0));
    // scale of the representative does not matter
    const TorusPoint y0(0.3, 1.7), x(-0.4, 0.2);
    CHECK(boundary_pairing(y0, x, ProjectiveClass(2.0)) ==
          doctest::Approx(std::exp(-teich_distance(y0, x)) *
                          std::sqrt(extremal_length(x, MeasuredFoliation(3, 6)) /
                                    extremal_length(y0, MeasuredFoliation(3, 6)))));
}

TEST_CASE("teichmueller rays") {
    const TorusPoint x(0.25, 0.9);
    for (const auto& u : {ProjectiveClass(0.0), ProjectiveClass(-2.5), ProjectiveClass::infinity()}) {
        CHECK(teich_ray(x, u, 0.0) == x);
        for (double t : {0.5, 1.0, 3.0, 7.0}) {
            const TorusPoint r = teich_ray(x, u, t);
            CHECK(extremal_length(r, u) == doctest::Approx(std::exp(-2.0 * t) * extremal_length(x, u)).epsilon(1e-9));
            CHECK(teich_distance(x, r) == doctest::Approx(t).epsilon(1e-9));
            const TorusPoint s = teich_ray(x, u, 0.5 * t);
            CHECK(teich_distance(s, r) == doctest::Approx(0.5 * t).epsilon(1e-9));
        }
    }
    CHECK(extremal_length(teich_ray(kI, ProjectiveClass(0.0), 1.0), ProjectiveClass(0.0)) ==
          doctest::Approx(std::exp(-2.0)).epsilon(1e-12));
}

TEST_CASE("boundary pairing limit along a ray") {
    const TorusPoint y0 = kI;
    const ProjectiveClass u(2.0), w(0.0);
    const double limit = boundary_pairing_bb(y0, u, w);
    CHECK(std::abs(boundary_pairing(y0, teich_ray(y0, u, 20.0), w) - limit) < 1e-4);
    double prev = INFINITY;
    for (double t = 1.0; t <= 8.0; t += 1.0) {
        const double gap = std::abs(boundary_pairing(y0, teich_ray(y0, u, t), w) - limit);
        CHECK(gap < prev);
        prev = gap;
    }
}

TEST_CASE("exp pairing converges along rays") {
    const TorusPoint y0 = kI, y(0.7, 0.4);
    for (const auto& u : {ProjectiveClass(0.3), ProjectiveClass::infinity()}) {
        const double limit = exp_pairing(y0, teich_ray(y0, u, 40.0), y);
        for (double t = 15.0; t <= 20.0; t += 1.0) {
            CHECK(std::abs(exp_pairing(y0, teich_ray(y0, u, t), y) - limit) < 1e-6);
        }
        // limiting value from the boundary data of u
        const double expected = std::exp(-teich_distance(y0, y)) *
                                std::sqrt(extremal_length(y, u) / extremal_length(y0, u));
        CHECK(limit == doctest::Approx(expected).epsilon(1e-9));
    }
}

TEST_CASE("exhaustion functions") {
    CHECK(u_exhaustion(kI, {1, 0}) == -1.0);
    CHECK(u_pair(kI, {1, 0}, {0, 1}) == -1.0);
    CHECK_THROWS_AS(u_pair(kI, {1, 2}, {2, 4}), std::domain_error);
    CHECK_THROWS_AS(u_exhaustion(kI, MeasuredFoliation::zero()), std::domain_error);

    // u_F is harmonic: the five-point Laplacian vanishes to truncation order
    std::mt19937_64 g(25);
    const double h = 1e-3;
    for (int k = 0; k < 1000; ++k) {
        const TorusPoint x = sweeps::random_point(g);
        const auto f = sweeps::random_foliation(g);
        auto u = [&](double dx, double dy) { return u_exhaustion(TorusPoint(x.re() + dx, x.im() + dy), f); };
        const double c = u(0, 0);
        CHECK(c < 0.0);
        const double lap = (u(h, 0) + u(-h, 0) + u(0, h) + u(0, -h) - 4.0 * c) / (h * h);
        CHECK(std::abs(lap) <= 1e-6 * std::abs(c) / (h * h));
    }
}

TEST_CASE("green comparison along rays stays in a bounded band") {
    const MeasuredFoliation gf(1, 0), hf(0, 1);
    for (const auto& u : {ProjectiveClass(0.3), ProjectiveClass(-1.7), ProjectiveClass::infinity()}) {
        for (double t = 1.0; t <= 10.0; t += 0.5) {
            const TorusPoint x = teich_ray(kI, u, t);
            const double scale = -std::exp(-2.0 * teich_distance(kI, x));
            const double rg = green(kI, x).value() / scale;
            const double ru = u_pair(x, gf, hf) / scale;
            CHECK(rg > 0.5);
            CHECK(rg < 4.0);
            CHECK(ru > 0.1);
            CHECK(ru < 10.0);
        }
    }
}
