#include "teich/foliation.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

namespace teich {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::optional<std::pair<std::int64_t, std::int64_t>> reduce(std::int64_t p, std::int64_t q) {
    if (p == 0 && q == 0) return std::nullopt;
    std::int64_t g = std::gcd(p, q);
    p /= g;
    q /= g;
    if (q < 0 || (q == 0 && p < 0)) {
        p = -p;
        q = -q;
    }
    return std::pair{p, q};
}

bool checked_affine(std::int64_t x, std::int64_t a, std::int64_t y, std::int64_t b, std::int64_t& out) {
    std::int64_t u = 0, v = 0;
    if (__builtin_mul_overflow(x, a, &u)) return false;
    if (__builtin_mul_overflow(y, b, &v)) return false;
    return !__builtin_add_overflow(u, v, &out);
}

} // namespace

ProjectiveClass::ProjectiveClass(double slope) : slope_(slope) {
    if (std::isnan(slope)) throw std::domain_error("ProjectiveClass: slope is NaN");
    if (std::isinf(slope)) slope_ = kInf;
}

ProjectiveClass ProjectiveClass::rational(std::int64_t p, std::int64_t q) {
    auto pq = reduce(p, q);
    if (!pq) throw std::domain_error("ProjectiveClass: 0/0 is not a slope");
    ProjectiveClass u(pq->second == 0 ? kInf : static_cast<double>(pq->first) / static_cast<double>(pq->second));
    u.exact_ = pq;
    return u;
}

ProjectiveClass ProjectiveClass::infinity() { return rational(1, 0); }

bool ProjectiveClass::is_infinite() const { return std::isinf(slope_); }

double ProjectiveClass::angle() const {
    if (is_infinite()) return std::numbers::pi / 2.0;
    double theta = std::atan(slope_);
    return theta < 0.0 ? theta + std::numbers::pi : theta;
}

MeasuredFoliation::MeasuredFoliation(double a, double b) : a_(a), b_(b) {
    if (!std::isfinite(a) || !std::isfinite(b)) {
        throw std::domain_error("MeasuredFoliation: weights must be finite");
    }
    if (a < 0.0 || (a == 0.0 && b < 0.0)) {
        a_ = -a;
        b_ = -b;
    }
    // normalize -0.0
    a_ += 0.0;
    b_ += 0.0;
}

MeasuredFoliation MeasuredFoliation::representative(const ProjectiveClass& u) {
    if (u.is_infinite()) return {0.0, 1.0};
    return {1.0, u.slope()};
}

MeasuredFoliation MeasuredFoliation::scaled(double t) const {
    if (!(t >= 0.0)) throw std::domain_error("MeasuredFoliation::scaled: factor must be nonnegative");
    if (t == 0.0 || is_zero()) return zero();
    return {t * a_, t * b_};
}

ProjectiveClass MeasuredFoliation::projective() const {
    if (is_zero()) throw std::domain_error("the zero foliation has no projective class");
    if (a_ == 0.0) return ProjectiveClass::infinity();
    return ProjectiveClass(b_ / a_);
}

MappingClass::MappingClass(std::int64_t p, std::int64_t q, std::int64_t r, std::int64_t s)
    : p_(p), q_(q), r_(r), s_(s) {
    std::int64_t det = 0;
    if (!checked_affine(p, s, -q, r, det) || det != 1) {
        throw std::invalid_argument("MappingClass: determinant must be 1");
    }
}

MappingClass operator*(const MappingClass& x, const MappingClass& y) {
    return {x.p_ * y.p_ + x.q_ * y.r_, x.p_ * y.q_ + x.q_ * y.s_,
            x.r_ * y.p_ + x.s_ * y.r_, x.r_ * y.q_ + x.s_ * y.s_};
}

double intersection(const MeasuredFoliation& f, const MeasuredFoliation& g) {
    // g = [q,p]
    return std::abs(f.a() * g.b() - f.b() * g.a());
}

MeasuredFoliation mcg_apply(const MappingClass& gamma, const MeasuredFoliation& f) {
    if (f.is_zero()) return f;
    const double p = static_cast<double>(gamma.p()), q = static_cast<double>(gamma.q());
    const double r = static_cast<double>(gamma.r()), s = static_cast<double>(gamma.s());
    return {s * f.a() + r * f.b(), q * f.a() + p * f.b()};
}

TorusPoint mcg_apply_point(const MappingClass& gamma, const TorusPoint& tau) {
    const std::complex<double> z = tau.z();
    const std::complex<double> num = static_cast<double>(gamma.p()) * z + static_cast<double>(gamma.q());
    const std::complex<double> den = static_cast<double>(gamma.r()) * z + static_cast<double>(gamma.s());
    const double d2 = std::norm(den);
    // Im((p z + q)/(r z + s)) = Im z / |r z + s|^2 keeps the sign exact.
    return {std::real(num * std::conj(den)) / d2, tau.im() / d2};
}

ProjectiveClass mcg_apply_slope(const MappingClass& gamma, const ProjectiveClass& u) {
    if (auto pq = u.exact()) {
        // the p/q-curve is [q,p]
        std::int64_t a = 0, b = 0;
        if (checked_affine(gamma.s(), pq->second, gamma.r(), pq->first, a) &&
            checked_affine(gamma.q(), pq->second, gamma.p(), pq->first, b)) {
            return ProjectiveClass::rational(b, a);
        }
    }
    const double p = static_cast<double>(gamma.p()), q = static_cast<double>(gamma.q());
    const double r = static_cast<double>(gamma.r()), s = static_cast<double>(gamma.s());
    double a = 0.0, b = 0.0;
    if (u.is_infinite()) {
        a = r;
        b = p;
    } else {
        a = s + r * u.slope();
        b = q + p * u.slope();
    }
    if (a == 0.0) return ProjectiveClass::infinity();
    return ProjectiveClass(b / a);
}

std::ostream& operator<<(std::ostream& os, const ProjectiveClass& u) {
    if (auto pq = u.exact()) {
        if (pq->second == 0) return os << "inf";
        return os << pq->first << "/" << pq->second;
    }
    if (u.is_infinite()) return os << "inf";
    return os << u.slope();
}

std::ostream& operator<<(std::ostream& os, const MeasuredFoliation& f) {
    return os << "[" << f.a() << "," << f.b() << "]";
}

std::ostream& operator<<(std::ostream& os, const MappingClass& g) {
    return os << "(" << g.p() << "," << g.q() << ";" << g.r() << "," << g.s() << ")";
}

} // namespace teich
