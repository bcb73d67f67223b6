#pragma once

#include <complex>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "teich/foliation.hpp"
#include "teich/quadrature.hpp"
#include "teich/torus_point.hpp"

namespace teich {

/// A (possibly complex-valued) function on PMF = R u {infinity}.
struct BoundaryFunction {
    std::string name;
    std::function<std::complex<double>(const ProjectiveClass&)> eval;
    /// Finite slopes where eval jumps; everywhere else it is continuous.
    std::vector<double> discontinuities;

    std::complex<double> operator()(const ProjectiveClass& u) const { return eval(u); }
    bool continuous_at(const ProjectiveClass& u) const;
};

struct KernelValue {
    double value;
};

/// P(x0, x, u) = (Ext_{x0}(F_u) / Ext_x(F_u))^xi with xi = 1.
KernelValue poisson_kernel(const TorusPoint& x0, const TorusPoint& x, const ProjectiveClass& u);

/// Busemann cocycle beta(x0, x, u) = 1/2 (log Ext_{x0}(F_u) - log Ext_x(F_u)), oriented so that
/// poisson_kernel(x0, x, u) = exp(2 xi beta(x0, x, u)).
double busemann(const TorusPoint& x0, const TorusPoint& x, const ProjectiveClass& u);

/// Integral of V(u) P(x0, x, u) d mu^{x0}(u) in the boundary chart of x0.
/// Throws QuadratureFailure if the estimate does not reach tol.
QuadratureResult<std::complex<double>> poisson_integral(const BoundaryFunction& v, const TorusPoint& x0,
                                                        const TorusPoint& x, double tol);

/// P[V](u0 + i h) for each height; heights must be positive and strictly decreasing and V
/// continuous at u0.
std::vector<std::complex<double>> schwarz_probe(const BoundaryFunction& v, const TorusPoint& x0,
                                                const ProjectiveClass& u0, std::span<const double> heights,
                                                double tol = 1e-11);

/// A real C^2 function on H with its Laplacian and boundary trace in closed form.
struct PlaneFunction {
    std::string name;
    std::function<double(const TorusPoint&)> value;
    std::function<double(const TorusPoint&)> laplacian;  ///< Euclidean, d^2/dx^2 + d^2/dy^2
    BoundaryFunction trace;
    bool harmonic = false;
};

struct GreenFormulaTerms {
    double lhs;       ///< V(x)
    double boundary;  ///< Poisson integral of the trace
    double bulk;      ///< kappa * integral of Laplacian(V) |g_x| dA
    double error_estimate;

    double residual() const { return boundary - bulk - lhs; }
};

/// Normalization of the bulk term, calibrated once so that V = |cayley(x, .)|^2 gives
/// bulk = 1 at the reference point x = i, then frozen for every other function.
double green_formula_kappa();

/// Terms of V(x) = boundary - bulk for subharmonic V.
GreenFormulaTerms green_formula_residual(const PlaneFunction& v, const TorusPoint& x, const TorusPoint& x0,
                                         double tol = 1e-7, double radius_cut = 1.0 - 1e-6);

/// xi * integral of V(u) q_{F_u,x} / |q_{F_u,x}| d mu^x(u), returned as the dz^2 coefficient.
/// For the boundary trace of a bounded holomorphic f this is -2i f'(x).
std::complex<double> derivative_average(const BoundaryFunction& v, const TorusPoint& x, double tol = 1e-11);

/// Same average against conj(q) / |q|; vanishes on traces of holomorphic functions.
std::complex<double> antiholomorphic_average(const BoundaryFunction& v, const TorusPoint& x, double tol = 1e-11);

/// d/dtau at x of a function whose del-differential has dz^2 coefficient A: (i/2) A.
inline std::complex<double> tau_derivative(std::complex<double> coefficient) {
    return std::complex<double>(0.0, 0.5) * coefficient;
}

/// Max over the grid of |antiholomorphic_average(V, x)|.
double cr_check(const BoundaryFunction& v, std::span<const TorusPoint> grid, double tol = 1e-11);

std::vector<TorusPoint> default_cr_grid();

} // namespace teich
