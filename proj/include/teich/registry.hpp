#pragma once

// Test functions with closed-form traces, Laplacians and values, shared by the test
// suites and the CLI. All are built on the Cayley map c(tau) = (tau - i)/(tau + i).

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "teich/poisson.hpp"

namespace teich::families {

/// Re c^n (or Im c^n), n in 1..6; harmonic, trace c(u)^n with c(infinity) = 1.
PlaneFunction harmonic_power(int n, bool imaginary_part);
/// Both parts for n = 1..6.
std::vector<PlaneFunction> harmonic_family();

/// |cayley(center, tau)|^(2n), n in 1..3; subharmonic with Laplacian 4 n^2 |c|^(2n-2) |c'|^2, trace 1.
PlaneFunction psh_power(int n, const TorusPoint& center = TorusPoint::square());
std::vector<PlaneFunction> psh_family();

/// Indicator of the open interval (a, b); its harmonic extension is the harmonic measure
/// (arg(tau - b) - arg(tau - a)) / pi.
PlaneFunction interval_indicator(double a, double b);

/// 1 / (1 + u^2), the trace of Re(i / (tau + i)).
PlaneFunction poisson_bump();

struct HolomorphicFunction {
    std::string name;
    std::function<std::complex<double>(std::complex<double>)> f;
    std::function<std::complex<double>(std::complex<double>)> derivative;
    BoundaryFunction trace;
    /// u -> conj(f(u)), the trace of the antiholomorphic function conj(f).
    BoundaryFunction conjugate_trace;
};

/// c(tau)^n for n >= 1.
HolomorphicFunction cayley_power(int n);

} // namespace teich::families
