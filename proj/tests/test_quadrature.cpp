#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "teich/poisson.hpp"
#include "teich/quadrature.hpp"
#include "teich/registry.hpp"
#include "teich/sweeps.hpp"
#include "teich/teich_torus.hpp"
#include "teich/thurston.hpp"

using namespace teich;
using cplx = std::complex<double>;

namespace {

const TorusPoint kI = TorusPoint::square();

double rc(const ProjectiveClass& u) {
    if (u.is_infinite()) return 1.0;
    const double s = u.slope();
    return (s * s - 1.0) / (s * s + 1.0);
}

// Poisson kernel against a harmonic trace; the integral is the harmonic function at x.
struct Analytic {
    PlaneFunction v;
    TorusPoint x;
    double exact() const { return v.value(x); }
    double operator()(const ProjectiveClass& u) const {
        return v.trace(u).real() * poisson_kernel(kI, x, u).value;
    }
};

} // namespace

TEST_CASE("interval rule basics") {
    QuadratureOptions opts;
    auto r = integrate_interval<double>([](double t) { return std::exp(t); }, 0.0, 1.0, opts);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-14));
    CHECK(r.evaluations > 0);

    auto c = integrate_interval<cplx>([](double t) { return cplx(std::cos(t), std::sin(t)); }, 0.0,
                                      std::numbers::pi, opts);
    CHECK(std::abs(c.value - cplx(0.0, 2.0)) < 1e-12);

    CHECK_THROWS_AS(integrate_interval<double>([](double) { return 1.0; }, 1.0, 0.0, opts), std::invalid_argument);
    QuadratureOptions bad;
    bad.tol = 0.0;
    CHECK_THROWS_AS(integrate_interval<double>([](double) { return 1.0; }, 0.0, 1.0, bad), std::invalid_argument);
}

TEST_CASE("evaluation cap gives an explicit non-converged result") {
    QuadratureOptions opts;
    opts.tol = 1e-14;
    opts.max_evaluations = 300;
    auto r = integrate_interval<double>([](double t) { return std::sin(1e4 * t); }, 0.0, 10.0, opts);
    CHECK_FALSE(r.converged);
    CHECK(r.evaluations <= 300);
    CHECK(r.error_estimate > opts.tol);
}

TEST_CASE("boundary integral examples") {
    QuadratureOptions opts;
    const auto one = integrate_boundary<double>([](const ProjectiveClass&) { return 1.0; }, TorusPoint(2, 0.1), opts);
    CHECK(one.value == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(one.converged);

    opts.tol = 1e-10;
    const auto r = integrate_boundary<double>(rc, kI, opts);
    CHECK(std::abs(r.value) <= 1e-10);
}

TEST_CASE("boundary chart round trip") {
    const TorusPoint x0(-0.7, 2.5);
    for (double theta : {-1.5, -0.3, 0.0, 0.9, 1.4}) {
        CHECK(boundary_chart_angle(x0, boundary_chart(x0, theta).slope()) == doctest::Approx(theta).epsilon(1e-14));
    }
}

TEST_CASE("jump handling") {
    QuadratureOptions opts;
    opts.tol = 1e-8;
    const TorusPoint x0(0.1, 1.2);
    auto smooth = [](const ProjectiveClass& u) { return u.is_infinite() ? 0.0 : std::exp(-u.slope() * u.slope()); };
    auto jump = [&](const ProjectiveClass& u) { return smooth(u) + (!u.is_infinite() && u.slope() > 0.37 ? 1.0 : 0.0); };
    const auto s = integrate_boundary<double>(smooth, x0, opts);
    REQUIRE(s.converged);

    SUBCASE("known jump as breakpoint: at most twice the smooth budget") {
        const std::vector<double> cut{0.37};
        const auto j = integrate_boundary<double>(jump, x0, opts, cut);
        CHECK(j.converged);
        CHECK(j.evaluations <= 2 * s.evaluations);
        CHECK(std::abs(j.value - s.value - (1.0 - BoundaryMeasure(x0).cdf(0.37))) <= 1e-8);
    }
    SUBCASE("unannounced jump: converges within twice the default evaluation cap") {
        QuadratureOptions capped = opts;
        capped.max_evaluations = 2 * QuadratureOptions{}.max_evaluations;
        const auto j = integrate_boundary<double>(jump, x0, capped);
        CHECK(j.converged);
        CHECK(std::abs(j.value - s.value - (1.0 - BoundaryMeasure(x0).cdf(0.37))) <= 1e-8);
    }
}

TEST_CASE("linearity") {
    QuadratureOptions opts;
    opts.tol = 1e-9;
    const TorusPoint x0(0.3, 0.7);
    const auto h2 = families::harmonic_power(2, true);
    auto f = [](const ProjectiveClass& u) { return rc(u); };
    auto g = [&](const ProjectiveClass& u) { return h2.trace(u).real(); };
    const double a = 2.5, b = -0.75;
    const auto fg = integrate_boundary<double>([&](const ProjectiveClass& u) { return a * f(u) + b * g(u); }, x0, opts);
    const auto rf = integrate_boundary<double>(f, x0, opts);
    const auto rg = integrate_boundary<double>(g, x0, opts);
    CHECK(std::abs(fg.value - (a * rf.value + b * rg.value)) <= 2.0 * opts.tol);
}

TEST_CASE("error honesty on the analytic family") {
    QuadratureOptions opts;
    opts.tol = 1e-6;
    opts.initial_panels = 1;
    std::mt19937_64 g(51);
    int cases = 0, honest = 0;
    for (const auto& v : families::harmonic_family()) {
        for (int k = 0; k < 20; ++k) {
            const Analytic a{v, sweeps::random_point(g)};
            const auto r = integrate_boundary<double>(a, kI, opts, std::vector<double>{a.x.re()});
            ++cases;
            if (std::abs(r.value - a.exact()) <= std::max(10.0 * r.error_estimate, 1e-13)) ++honest;
        }
    }
    CHECK(honest >= static_cast<int>(0.99 * cases));
}

TEST_CASE("disk integral examples") {
    const TorusPoint c(0.4, 1.3);
    SUBCASE("radial reference 4 log(1/r) / (2 pi)") {
        // g times the pullback Jacobian equals 2/pi on the disk
        auto g = [&](const TorusPoint& z) {
            const cplx w = cayley(c, z.z());
            return (2.0 / std::numbers::pi) * std::pow(std::norm(1.0 - w), 2) / (4.0 * c.im() * c.im());
        };
        const auto r = integrate_disk(g, c, 1.0 - 1e-6, 1e-8);
        CHECK(r.converged);
        CHECK(r.value == doctest::Approx(1.0).epsilon(1e-8));
    }
    SUBCASE("zero integrand") {
        const auto r = integrate_disk([](const TorusPoint&) { return 0.0; }, c, 0.99, 1e-10);
        CHECK(r.value == 0.0);
        CHECK(r.converged);
    }
    SUBCASE("truncation study") {
        const auto v = families::psh_power(2, TorusPoint(0.0, 1.0));
        auto lap = [&](const TorusPoint& z) { return v.laplacian(z); };
        const auto a = integrate_disk(lap, c, 0.999, 1e-3);
        const auto b = integrate_disk(lap, c, 0.9999, 1e-3);
        CHECK(std::abs(a.value - b.value) <= a.error_estimate + b.error_estimate);
    }
    CHECK_THROWS_AS(integrate_disk([](const TorusPoint&) { return 1.0; }, c, 1.0, 1e-8), std::invalid_argument);
}

TEST_CASE("monte carlo boundary means") {
    const auto one = mc_boundary([](const ProjectiveClass&) { return 1.0; }, kI, 10000, {1, 0});
    CHECK(one.mean == 1.0);
    CHECK(one.std_error == 0.0);

    const auto h = mc_boundary(rc, kI, 1000000, {2, 0});
    CHECK(std::abs(h.mean) <= 4.0 * h.std_error);

    const auto a = mc_boundary(rc, kI, 50000, {3, 0}, Exec::serial);
    const auto b = mc_boundary(rc, kI, 50000, {3, 0}, Exec::parallel);
    CHECK(a.mean == b.mean);
    CHECK(a.std_error == b.std_error);

    QuadratureOptions opts;
    const TorusPoint x0(-0.5, 0.8);
    for (const auto& v : families::harmonic_family()) {
        auto f = [&](const ProjectiveClass& u) { return v.trace(u).real(); };
        const auto q = integrate_boundary<double>(f, x0, opts);
        const auto m = mc_boundary(f, x0, 100000, {4, 0});
        CHECK(std::abs(q.value - m.mean) <= 4.0 * m.std_error);
    }
}
