#include "teich/teich_torus.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace teich {

namespace {

constexpr double kPi = std::numbers::pi;

// Ext of [cos theta, sin theta]
double ext_at_angle(const TorusPoint& tau, double theta) {
    const double a = std::cos(theta), b = std::sin(theta);
    return std::norm(a * tau.z() - b) / tau.im();
}

double ratio_at_angle(const TorusPoint& t1, const TorusPoint& t2, double theta) {
    return ext_at_angle(t1, theta) / ext_at_angle(t2, theta);
}

ProjectiveClass class_at_angle(double theta) {
    const double c = std::cos(theta), s = std::sin(theta);
    if (std::abs(c) < 1e-300) return ProjectiveClass::infinity();
    return ProjectiveClass(s / c);
}

} // namespace

SurfaceType::SurfaceType(int g, int m) : g_(g), m_(m) {
    if (g < 0 || m < 0 || 2 * g - 2 + m <= 0) {
        throw std::invalid_argument("SurfaceType: need g, m >= 0 and 2g - 2 + m > 0");
    }
}

double extremal_length(const TorusPoint& tau, const MeasuredFoliation& f) {
    if (f.is_zero()) throw std::domain_error("extremal_length: zero foliation");
    return std::norm(f.a() * tau.z() - f.b()) / tau.im();
}

double extremal_length(const TorusPoint& tau, const ProjectiveClass& u) {
    return extremal_length(tau, MeasuredFoliation::representative(u));
}

QuadraticDifferential hubbard_masur(const TorusPoint& tau, const MeasuredFoliation& f) {
    if (f.is_zero()) throw std::domain_error("hubbard_masur: zero foliation");
    const std::complex<double> w = (-f.b() + f.a() * std::conj(tau.z())) / tau.im();
    return {-(w * w), tau};
}

KerckhoffSup kerckhoff_sup(const TorusPoint& t1, const TorusPoint& t2, std::size_t grid) {
    if (grid < 3) throw std::invalid_argument("kerckhoff_sup: grid too small");
    if (t1 == t2) return {1.0, ProjectiveClass(0.0)};

    const double step = kPi / static_cast<double>(grid);
    std::size_t best = 0;
    double best_value = ratio_at_angle(t1, t2, 0.0);
    for (std::size_t k = 1; k < grid; ++k) {
        const double v = ratio_at_angle(t1, t2, step * static_cast<double>(k));
        if (v > best_value) {
            best_value = v;
            best = k;
        }
    }

    // golden-section search on the bracketing cell; theta is pi-periodic so no clamping
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double lo = step * (static_cast<double>(best) - 1.0);
    double hi = step * (static_cast<double>(best) + 1.0);
    double c = hi - inv_phi * (hi - lo);
    double d = lo + inv_phi * (hi - lo);
    double fc = ratio_at_angle(t1, t2, c);
    double fd = ratio_at_angle(t1, t2, d);
    while (hi - lo > 1e-12) {
        if (fc > fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - inv_phi * (hi - lo);
            fc = ratio_at_angle(t1, t2, c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + inv_phi * (hi - lo);
            fd = ratio_at_angle(t1, t2, d);
        }
    }
    double theta = 0.5 * (lo + hi);
    double value = ratio_at_angle(t1, t2, theta);
    if (best_value > value) {
        value = best_value;
        theta = step * static_cast<double>(best);
    }
    theta = std::fmod(theta, kPi);
    if (theta < 0.0) theta += kPi;
    return {std::max(value, 1.0), class_at_angle(theta)};
}

double teich_distance(const TorusPoint& t1, const TorusPoint& t2, DistanceMethod method) {
    if (method == DistanceMethod::kerckhoff_sup) {
        return 0.5 * std::log(kerckhoff_sup(t1, t2).ratio);
    }
    return std::asinh(std::abs(t1.z() - t2.z()) / (2.0 * std::sqrt(t1.im() * t2.im())));
}

double GreenValue::value() const {
    if (pole_) throw std::domain_error("GreenValue: logarithmic pole");
    return value_;
}

GreenValue green(const TorusPoint& t1, const TorusPoint& t2) {
    const double d = teich_distance(t1, t2);
    if (d == 0.0) return GreenValue::pole();
    // log tanh d without cancellation for large d
    const double e = std::exp(-2.0 * d);
    return GreenValue::finite(std::log1p(-e) - std::log1p(e));
}

std::complex<double> cayley(const TorusPoint& center, std::complex<double> tau) {
    return (tau - center.z()) / (tau - std::conj(center.z()));
}

std::complex<double> cayley_inverse(const TorusPoint& center, std::complex<double> w) {
    return (center.z() - w * std::conj(center.z())) / (1.0 - w);
}

double gromov_product(const TorusPoint& y0, const TorusPoint& x, const TorusPoint& y) {
    const double g = 0.5 * (teich_distance(y0, x) + teich_distance(y0, y) - teich_distance(x, y));
    return std::max(g, 0.0);
}

double exp_pairing(const TorusPoint& y0, const TorusPoint& x, const TorusPoint& y) {
    return std::exp(-2.0 * gromov_product(y0, x, y));
}

double boundary_pairing(const TorusPoint& y0, const TorusPoint& x, const ProjectiveClass& u) {
    return std::exp(-teich_distance(y0, x)) *
           std::sqrt(extremal_length(x, u) / extremal_length(y0, u));
}

double boundary_pairing_bb(const TorusPoint& y0, const ProjectiveClass& u, const ProjectiveClass& w) {
    const MeasuredFoliation fu = MeasuredFoliation::representative(u);
    const MeasuredFoliation fw = MeasuredFoliation::representative(w);
    return intersection(fu, fw) / std::sqrt(extremal_length(y0, fu) * extremal_length(y0, fw));
}

TorusPoint teich_ray(const TorusPoint& x, const ProjectiveClass& u, double t) {
    if (!(t >= 0.0)) throw std::domain_error("teich_ray: t must be nonnegative");
    if (t == 0.0) return x;
    const double stretch = std::exp(2.0 * t);
    if (u.is_infinite()) return {x.re(), x.im() * stretch};
    // conjugate u to infinity by tau -> -1/(tau - u), move vertically, map back
    const std::complex<double> w0 = -1.0 / (x.z() - u.slope());
    const std::complex<double> w(w0.real(), w0.imag() * stretch);
    const std::complex<double> inv = 1.0 / w;
    // Im(-1/w) = Im w / |w|^2 computed directly to keep it positive
    return {u.slope() - inv.real(), w.imag() / std::norm(w)};
}

double u_exhaustion(const TorusPoint& tau, const MeasuredFoliation& f) {
    return -1.0 / extremal_length(tau, f);
}

double u_pair(const TorusPoint& tau, const MeasuredFoliation& g, const MeasuredFoliation& h) {
    if (g.is_zero() || h.is_zero() || intersection(g, h) == 0.0) {
        throw std::domain_error("u_pair: foliations must be nonzero and transverse");
    }
    return std::max(u_exhaustion(tau, g), u_exhaustion(tau, h));
}

} // namespace teich
