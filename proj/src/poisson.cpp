#include "teich/poisson.hpp"

#include <cmath>
#include <stdexcept>

#include "teich/registry.hpp"
#include "teich/teich_torus.hpp"

namespace teich {

namespace {

using cplx = std::complex<double>;

// xi for the once-punctured torus
constexpr double kXi = 1.0;

// q_{F_u,x} / |q_{F_u,x}|
cplx unit_hubbard_masur(const TorusPoint& x, const ProjectiveClass& u) {
    const MeasuredFoliation f = MeasuredFoliation::representative(u);
    return hubbard_masur(x, f).coeff / extremal_length(x, f);
}

cplx average_against(const BoundaryFunction& v, const TorusPoint& x, double tol, bool conjugate) {
    QuadratureOptions opts;
    opts.tol = tol;
    auto r = integrate_boundary<cplx>(
        [&](const ProjectiveClass& u) {
            const cplx q = unit_hubbard_masur(x, u);
            return kXi * v(u) * (conjugate ? std::conj(q) : q);
        },
        x, opts, v.discontinuities);
    if (!r.converged) {
        throw QuadratureFailure("derivative average did not converge", std::abs(r.value), r.error_estimate,
                                r.evaluations);
    }
    return r.value;
}

} // namespace

bool BoundaryFunction::continuous_at(const ProjectiveClass& u) const {
    for (double d : discontinuities) {
        if (!u.is_infinite() && u.slope() == d) return false;
    }
    return true;
}

KernelValue poisson_kernel(const TorusPoint& x0, const TorusPoint& x, const ProjectiveClass& u) {
    return {std::pow(extremal_length(x0, u) / extremal_length(x, u), kXi)};
}

double busemann(const TorusPoint& x0, const TorusPoint& x, const ProjectiveClass& u) {
    return 0.5 * (std::log(extremal_length(x0, u)) - std::log(extremal_length(x, u)));
}

QuadratureResult<cplx> poisson_integral(const BoundaryFunction& v, const TorusPoint& x0, const TorusPoint& x,
                                        double tol) {
    QuadratureOptions opts;
    opts.tol = tol;
    std::vector<double> cuts = v.discontinuities;
    cuts.push_back(x.re());  // the kernel peaks below x
    auto r = integrate_boundary<cplx>([&](const ProjectiveClass& u) { return v(u) * poisson_kernel(x0, x, u).value; },
                                      x0, opts, cuts);
    if (!r.converged) {
        throw QuadratureFailure("poisson_integral did not converge", std::abs(r.value), r.error_estimate,
                                r.evaluations);
    }
    return r;
}

std::vector<cplx> schwarz_probe(const BoundaryFunction& v, const TorusPoint& x0, const ProjectiveClass& u0,
                                std::span<const double> heights, double tol) {
    if (u0.is_infinite()) throw std::invalid_argument("schwarz_probe: u0 must be finite");
    if (!v.continuous_at(u0)) throw std::invalid_argument("schwarz_probe: V is not continuous at u0");
    for (std::size_t k = 0; k < heights.size(); ++k) {
        if (!(heights[k] > 0.0) || (k > 0 && !(heights[k] < heights[k - 1]))) {
            throw std::invalid_argument("schwarz_probe: heights must be positive and strictly decreasing");
        }
    }
    std::vector<cplx> out;
    out.reserve(heights.size());
    for (double h : heights) out.push_back(poisson_integral(v, x0, TorusPoint(u0.slope(), h), tol).value);
    return out;
}

double green_formula_kappa() {
    static const double kappa = [] {
        const TorusPoint ref = TorusPoint::square();
        const PlaneFunction v = families::psh_power(1, ref);
        auto raw = integrate_disk([&](const TorusPoint& z) { return v.laplacian(z); }, ref, 1.0 - 1e-6, 1e-10);
        return 1.0 / raw.value;
    }();
    return kappa;
}

GreenFormulaTerms green_formula_residual(const PlaneFunction& v, const TorusPoint& x, const TorusPoint& x0,
                                         double tol, double radius_cut) {
    GreenFormulaTerms t{};
    t.lhs = v.value(x);
    auto boundary = poisson_integral(v.trace, x0, x, 0.1 * tol);
    t.boundary = boundary.value.real();
    t.error_estimate = boundary.error_estimate;
    if (v.harmonic) {
        t.bulk = 0.0;
        return t;
    }
    auto bulk = integrate_disk([&](const TorusPoint& z) { return v.laplacian(z); }, x, radius_cut, tol);
    if (!bulk.converged) {
        throw QuadratureFailure("green formula bulk term did not converge", std::abs(bulk.value),
                                bulk.error_estimate, bulk.evaluations);
    }
    const double kappa = green_formula_kappa();
    t.bulk = kappa * bulk.value;
    t.error_estimate += kappa * bulk.error_estimate;
    return t;
}

cplx derivative_average(const BoundaryFunction& v, const TorusPoint& x, double tol) {
    return average_against(v, x, tol, false);
}

cplx antiholomorphic_average(const BoundaryFunction& v, const TorusPoint& x, double tol) {
    return average_against(v, x, tol, true);
}

double cr_check(const BoundaryFunction& v, std::span<const TorusPoint> grid, double tol) {
    double worst = 0.0;
    for (const auto& x : grid) worst = std::max(worst, std::abs(antiholomorphic_average(v, x, tol)));
    return worst;
}

std::vector<TorusPoint> default_cr_grid() {
    std::vector<TorusPoint> g;
    for (double re : {-1.0, 0.0, 1.0}) {
        for (double im : {0.5, 1.0, 2.0}) g.emplace_back(re, im);
    }
    return g;
}

} // namespace teich
