#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <queue>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "teich/foliation.hpp"
#include "teich/parallel.hpp"
#include "teich/rng.hpp"
#include "teich/teich_torus.hpp"
#include "teich/torus_point.hpp"

namespace teich {

template <class T>
struct QuadratureResult {
    T value{};
    double error_estimate = 0.0;
    std::size_t evaluations = 0;
    bool converged = false;
};

struct QuadratureOptions {
    double tol = 1e-10;  ///< absolute
    std::size_t max_evaluations = 400000;
    std::size_t initial_panels = 8;
};

/// Thrown by callers that require convergence; carries the best estimate reached.
class QuadratureFailure : public std::runtime_error {
public:
    QuadratureFailure(const std::string& what, double estimate_abs, double error_estimate, std::size_t evaluations)
        : std::runtime_error(what + " (estimate " + std::to_string(estimate_abs) + ", error estimate " +
                             std::to_string(error_estimate) + ", " + std::to_string(evaluations) + " evaluations)"),
          estimate_abs_(estimate_abs), error_estimate_(error_estimate), evaluations_(evaluations) {}

    double estimate_abs() const { return estimate_abs_; }
    double error_estimate() const { return error_estimate_; }
    std::size_t evaluations() const { return evaluations_; }

private:
    double estimate_abs_;
    double error_estimate_;
    std::size_t evaluations_;
};

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK qk15 tables).
inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class T>
struct Panel {
    double a, b;
    T value;
    double error;
    friend bool operator<(const Panel& x, const Panel& y) { return x.error < y.error; }
};

template <class T>
double magnitude(const T& v) {
    return std::abs(v);
}

/// One Gauss-Kronrod 7/15 panel with the QUADPACK error heuristic.
template <class T, class F>
Panel<T> gk15(F& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const T fc = f(center);
    T resg = fc * kWg[3];
    T resk = fc * kWgk[7];
    double resabs = magnitude(fc) * kWgk[7];
    std::array<T, 7> f1{}, f2{};
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[static_cast<std::size_t>(j)];
        f1[static_cast<std::size_t>(j)] = f(center - dx);
        f2[static_cast<std::size_t>(j)] = f(center + dx);
        const T s = f1[static_cast<std::size_t>(j)] + f2[static_cast<std::size_t>(j)];
        resk += s * kWgk[static_cast<std::size_t>(j)];
        resabs += (magnitude(f1[static_cast<std::size_t>(j)]) + magnitude(f2[static_cast<std::size_t>(j)])) *
                  kWgk[static_cast<std::size_t>(j)];
        if (j % 2 == 1) resg += s * kWg[static_cast<std::size_t>(j / 2)];
    }
    const T mean = resk * 0.5;
    double resasc = magnitude(fc - mean) * kWgk[7];
    for (std::size_t j = 0; j < 7; ++j) {
        resasc += kWgk[j] * (magnitude(f1[j] - mean) + magnitude(f2[j] - mean));
    }
    resk *= half;
    resabs *= std::abs(half);
    resasc *= std::abs(half);
    double err = magnitude((resk - resg * half));
    if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    constexpr double eps = std::numeric_limits<double>::epsilon();
    err = std::max(err, 50.0 * eps * resabs);
    return {a, b, resk, err};
}

} // namespace detail

/// Globally adaptive Gauss-Kronrod 7/15 quadrature of f over [a, b], a < b.
/// The panel with the largest error estimate is bisected until the summed estimate is
/// below opts.tol or the evaluation cap is reached; the cap never truncates silently:
/// the result then carries converged = false. Interior breakpoints seed the initial
/// partition; the rule is open so endpoints are never evaluated.
template <class T, class F>
QuadratureResult<T> integrate_interval(F&& f, double a, double b, const QuadratureOptions& opts,
                                       std::span<const double> breakpoints = {}) {
    if (!(opts.tol > 0.0)) throw std::invalid_argument("integrate_interval: tol must be positive");
    if (!(a < b)) throw std::invalid_argument("integrate_interval: need a < b");

    std::vector<double> cuts{a};
    const std::size_t panels = std::max<std::size_t>(1, opts.initial_panels);
    for (std::size_t k = 1; k < panels; ++k) {
        cuts.push_back(a + (b - a) * static_cast<double>(k) / static_cast<double>(panels));
    }
    for (double c : breakpoints) {
        if (c > a && c < b) cuts.push_back(c);
    }
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    std::priority_queue<detail::Panel<T>> heap;
    std::vector<detail::Panel<T>> done;  // panels too narrow to split further
    std::size_t evals = 0;
    double total_error = 0.0;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
        auto p = detail::gk15<T>(f, cuts[k], cuts[k + 1]);
        evals += 15;
        total_error += p.error;
        heap.push(p);
    }

    while (total_error > opts.tol && !heap.empty() && evals + 30 <= opts.max_evaluations) {
        auto worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b) || (worst.b - worst.a) < 1e-14 * (b - a)) {
            done.push_back(worst);
            continue;
        }
        auto left = detail::gk15<T>(f, worst.a, mid);
        auto right = detail::gk15<T>(f, mid, worst.b);
        evals += 30;
        total_error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }

    while (!heap.empty()) {
        done.push_back(heap.top());
        heap.pop();
    }
    // deterministic summation in interval order
    std::sort(done.begin(), done.end(), [](const auto& x, const auto& y) { return x.a < y.a; });
    std::vector<T> values;
    values.reserve(done.size());
    double err = 0.0;
    for (const auto& p : done) {
        values.push_back(p.value);
        err += p.error;
    }
    QuadratureResult<T> r;
    r.value = tree_sum(values);
    r.error_estimate = err;
    r.evaluations = evals;
    r.converged = err <= opts.tol;
    return r;
}

/// Slope u(theta) = Re x0 + Im x0 tan(theta) of the boundary chart centred at x0.
inline ProjectiveClass boundary_chart(const TorusPoint& x0, double theta) {
    return ProjectiveClass(x0.re() + x0.im() * std::tan(theta));
}

/// Inverse of boundary_chart; finite slopes only.
inline double boundary_chart_angle(const TorusPoint& x0, double u) {
    return std::atan((u - x0.re()) / x0.im());
}

/// Integral of f against the Thurston probability measure of x0 on PMF.
/// Under u = Re x0 + Im x0 tan(theta) the measure becomes d(theta)/pi on (-pi/2, pi/2),
/// so constants integrate exactly and u = infinity sits at the (never evaluated) endpoints.
/// `breakpoints` are slopes where f is known to jump or peak.
template <class T, class F>
QuadratureResult<T> integrate_boundary(F&& f, const TorusPoint& x0, const QuadratureOptions& opts,
                                       std::span<const double> breakpoints = {}) {
    std::vector<double> cuts;
    cuts.reserve(breakpoints.size());
    for (double u : breakpoints) {
        if (std::isfinite(u)) cuts.push_back(boundary_chart_angle(x0, u));
    }
    constexpr double pi = std::numbers::pi;
    QuadratureOptions scaled = opts;
    scaled.tol = opts.tol * pi;
    auto g = [&](double theta) -> T { return f(boundary_chart(x0, theta)); };
    auto r = integrate_interval<T>(g, -pi / 2.0, pi / 2.0, scaled, cuts);
    r.value = r.value / pi;
    r.error_estimate /= pi;
    r.converged = r.error_estimate <= opts.tol;
    return r;
}

namespace detail {

// Angular integral of G over the circle of radius r by the periodic trapezoid rule,
// doubling until two successive levels agree; returns the integral over [0, 2 pi).
template <class G>
double angular_integral(G& g, double r, std::size_t& evals) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    std::size_t n = 32;
    double sum = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        sum += g(std::polar(r, two_pi * static_cast<double>(k) / static_cast<double>(n)));
    }
    evals += n;
    double prev = two_pi * sum / static_cast<double>(n);
    while (n < (1u << 16)) {
        double extra = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            extra += g(std::polar(r, two_pi * (static_cast<double>(k) + 0.5) / static_cast<double>(n)));
        }
        evals += n;
        sum += extra;
        n *= 2;
        const double cur = two_pi * sum / static_cast<double>(n);
        if (std::abs(cur - prev) <= 1e-13 * (1.0 + std::abs(cur))) return cur;
        prev = cur;
    }
    return prev;
}

} // namespace detail

/// Integral over H of g(zeta) |green(center, zeta)| dA(zeta).
///
/// The plane is pulled back to the unit disk by w = cayley(center, zeta), where the Green
/// weight becomes log(1/|w|) and dA(zeta) = 4 Im(center)^2 / |1 - w|^4 dA(w). The angular
/// integral uses the periodic trapezoid rule; the radial integral over [0, radius_cut] uses
/// the adaptive Gauss-Kronrod rule on r log(1/r) Phi(r). The integrand vanishes like
/// r log r at the pole, so no substitution is needed there; the open rule never evaluates
/// r = 0. The annulus [radius_cut, 1) is bounded by max|Phi| times the exact integral of
/// r log(1/r) over it, sampled on a few circles, and added to the error estimate.
template <class G>
QuadratureResult<double> integrate_disk(G&& g, const TorusPoint& center, double radius_cut, double tol) {
    if (!(radius_cut > 0.0 && radius_cut < 1.0)) {
        throw std::invalid_argument("integrate_disk: radius_cut must lie in (0, 1)");
    }
    const double jac_scale = 4.0 * center.im() * center.im();
    std::size_t evals = 0;
    auto pulled = [&](std::complex<double> w) -> double {
        const std::complex<double> zeta = cayley_inverse(center, w);
        const double jac = jac_scale / std::pow(std::norm(1.0 - w), 2);
        return g(TorusPoint(zeta.real(), std::max(zeta.imag(), std::numeric_limits<double>::min()))) * jac;
    };
    auto radial = [&](double r) -> double {
        return r * std::log(1.0 / r) * detail::angular_integral(pulled, r, evals);
    };
    QuadratureOptions opts;
    opts.tol = 0.5 * tol;
    opts.initial_panels = 16;
    auto body = integrate_interval<double>(radial, 0.0, radius_cut, opts);

    double phi_max = 0.0;
    for (int k = 0; k < 8; ++k) {
        const double r = radius_cut + (1.0 - radius_cut) * (static_cast<double>(k) / 8.0);
        phi_max = std::max(phi_max, std::abs(detail::angular_integral(pulled, r, evals)));
    }
    const double rc2 = radius_cut * radius_cut;
    const double annulus = 0.25 - 0.25 * rc2 + 0.5 * rc2 * std::log(radius_cut);
    const double tail = 2.0 * phi_max * annulus;

    QuadratureResult<double> r;
    r.value = body.value;
    r.error_estimate = body.error_estimate + tail;
    r.evaluations = evals;
    r.converged = body.converged && r.error_estimate <= tol;
    return r;
}

/// Monte Carlo mean of f under the Thurston probability measure of x0, using exact draws
/// u = Re x0 + Im x0 tan(pi (v - 1/2)). Reproducible per (stream, n); identical for both
/// execution modes.
template <class F>
McEstimate mc_boundary(F&& f, const TorusPoint& x0, std::size_t n, const SeedStream& stream,
                       Exec exec = Exec::parallel) {
    return mean_over_samples(n, stream, exec, [&](std::mt19937_64& g) {
        const double v = uniform_open01(g);
        return static_cast<double>(f(ProjectiveClass(x0.re() + x0.im() * std::tan(std::numbers::pi * (v - 0.5)))));
    });
}

} // namespace teich
