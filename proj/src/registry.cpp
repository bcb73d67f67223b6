#include "teich/registry.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace teich::families {

namespace {

const std::complex<double> kI(0.0, 1.0);

std::complex<double> cayley_i(std::complex<double> z) { return (z - kI) / (z + kI); }

std::complex<double> cayley_trace(const ProjectiveClass& u) {
    if (u.is_infinite()) return 1.0;
    return cayley_i(std::complex<double>(u.slope(), 0.0));
}

} // namespace

PlaneFunction harmonic_power(int n, bool imaginary_part) {
    if (n < 1 || n > 6) throw std::invalid_argument("harmonic_power: n must be in 1..6");
    const std::string part = imaginary_part ? "im" : "re";
    PlaneFunction v;
    v.name = part + "_cayley^" + std::to_string(n);
    auto pick = [imaginary_part](std::complex<double> w) { return imaginary_part ? w.imag() : w.real(); };
    v.value = [n, pick](const TorusPoint& t) { return pick(std::pow(cayley_i(t.z()), n)); };
    v.laplacian = [](const TorusPoint&) { return 0.0; };
    v.trace.name = v.name;
    v.trace.eval = [n, pick](const ProjectiveClass& u) -> std::complex<double> {
        return pick(std::pow(cayley_trace(u), n));
    };
    v.harmonic = true;
    return v;
}

std::vector<PlaneFunction> harmonic_family() {
    std::vector<PlaneFunction> out;
    for (int n = 1; n <= 6; ++n) {
        out.push_back(harmonic_power(n, false));
        out.push_back(harmonic_power(n, true));
    }
    return out;
}

PlaneFunction psh_power(int n, const TorusPoint& center) {
    if (n < 1 || n > 3) throw std::invalid_argument("psh_power: n must be in 1..3");
    PlaneFunction v;
    v.name = "|cayley|^" + std::to_string(2 * n);
    v.value = [n, center](const TorusPoint& t) { return std::pow(std::abs(cayley(center, t.z())), 2 * n); };
    v.laplacian = [n, center](const TorusPoint& t) {
        const std::complex<double> c = cayley(center, t.z());
        // c'(tau) = (c - conj c) / (tau - conj c)^2 = 2i Im(c0) / (tau - conj c0)^2
        const double dc2 = 4.0 * center.im() * center.im() / std::pow(std::norm(t.z() - std::conj(center.z())), 2);
        return 4.0 * n * n * std::pow(std::norm(c), n - 1) * dc2;
    };
    v.trace.name = v.name;
    v.trace.eval = [](const ProjectiveClass&) -> std::complex<double> { return 1.0; };
    v.harmonic = false;
    return v;
}

std::vector<PlaneFunction> psh_family() { return {psh_power(1), psh_power(2), psh_power(3)}; }

PlaneFunction interval_indicator(double a, double b) {
    if (!(a < b) || !std::isfinite(a) || !std::isfinite(b)) {
        throw std::invalid_argument("interval_indicator: need finite a < b");
    }
    PlaneFunction v;
    v.name = "indicator(" + std::to_string(a) + "," + std::to_string(b) + ")";
    v.value = [a, b](const TorusPoint& t) {
        return (std::arg(t.z() - b) - std::arg(t.z() - a)) / std::numbers::pi;
    };
    v.laplacian = [](const TorusPoint&) { return 0.0; };
    v.trace.name = v.name;
    v.trace.eval = [a, b](const ProjectiveClass& u) -> std::complex<double> {
        if (u.is_infinite()) return 0.0;
        return (u.slope() > a && u.slope() < b) ? 1.0 : 0.0;
    };
    v.trace.discontinuities = {a, b};
    v.harmonic = true;
    return v;
}

PlaneFunction poisson_bump() {
    PlaneFunction v;
    v.name = "poisson_bump";
    v.value = [](const TorusPoint& t) { return (kI / (t.z() + kI)).real(); };
    v.laplacian = [](const TorusPoint&) { return 0.0; };
    v.trace.name = v.name;
    v.trace.eval = [](const ProjectiveClass& u) -> std::complex<double> {
        if (u.is_infinite()) return 0.0;
        return 1.0 / (1.0 + u.slope() * u.slope());
    };
    v.harmonic = true;
    return v;
}

HolomorphicFunction cayley_power(int n) {
    if (n < 1) throw std::invalid_argument("cayley_power: n must be positive");
    HolomorphicFunction h;
    h.name = "cayley^" + std::to_string(n);
    h.f = [n](std::complex<double> z) { return std::pow(cayley_i(z), n); };
    h.derivative = [n](std::complex<double> z) {
        // c' = 2i / (z + i)^2
        return static_cast<double>(n) * std::pow(cayley_i(z), n - 1) * (2.0 * kI) / ((z + kI) * (z + kI));
    };
    h.trace.name = h.name;
    h.trace.eval = [n](const ProjectiveClass& u) { return std::pow(cayley_trace(u), n); };
    h.conjugate_trace.name = "conj " + h.name;
    h.conjugate_trace.eval = [n](const ProjectiveClass& u) { return std::conj(std::pow(cayley_trace(u), n)); };
    return h;
}

} // namespace teich::families
