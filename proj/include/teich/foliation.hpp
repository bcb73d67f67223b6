#pragma once

#include <cstdint>
#include <optional>
#include <ostream>

#include "teich/torus_point.hpp"

namespace teich {

/// A point of PMF, written as the slope u = b/a of the class [a,b], with u = infinity for [0,1].
///
/// Classes built from an integer pair p/q are flagged rational and keep the exact
/// pair; they are the projective classes of weighted simple closed curves. Every
/// other class is treated as generic (uniquely ergodic on the torus).
class ProjectiveClass {
public:
    explicit ProjectiveClass(double slope);

    /// The class of the p/q-curve, i.e. of [q,p]. q = 0 gives the infinite slope.
    static ProjectiveClass rational(std::int64_t p, std::int64_t q);
    static ProjectiveClass infinity();

    double slope() const { return slope_; }
    bool is_infinite() const;
    bool is_rational() const { return exact_.has_value(); }
    /// Reduced (p, q) with q >= 0; only present for rational classes.
    std::optional<std::pair<std::int64_t, std::int64_t>> exact() const { return exact_; }

    /// Angle theta in [0, pi) with [cos theta, sin theta] representing the class.
    double angle() const;

    friend bool operator==(const ProjectiveClass& x, const ProjectiveClass& y) {
        return x.slope_ == y.slope_;
    }

private:
    double slope_;
    std::optional<std::pair<std::int64_t, std::int64_t>> exact_;
};

/// The measured foliation F_[a,b] on the once-punctured torus, modulo [a,b] ~ [-a,-b].
/// The stored representative has a > 0, or a == 0 and b > 0. The zero foliation is a
/// separate sentinel state.
class MeasuredFoliation {
public:
    MeasuredFoliation(double a, double b);

    static MeasuredFoliation zero() { return MeasuredFoliation(); }
    /// [1,u] for finite slopes, [0,1] for the infinite slope.
    static MeasuredFoliation representative(const ProjectiveClass& u);

    double a() const { return a_; }
    double b() const { return b_; }
    bool is_zero() const { return a_ == 0.0 && b_ == 0.0; }

    /// t * F for t >= 0.
    MeasuredFoliation scaled(double t) const;
    /// Throws std::domain_error for the zero foliation.
    ProjectiveClass projective() const;

    friend bool operator==(const MeasuredFoliation&, const MeasuredFoliation&) = default;

private:
    MeasuredFoliation() : a_(0.0), b_(0.0) {}
    double a_;
    double b_;
};

/// An element of Mod(1,1) = SL(2,Z), stored as the matrix (p q; r s).
class MappingClass {
public:
    MappingClass(std::int64_t p, std::int64_t q, std::int64_t r, std::int64_t s);

    static MappingClass identity() { return {1, 0, 0, 1}; }
    static MappingClass twist() { return {1, 1, 0, 1}; }
    static MappingClass rotation() { return {0, -1, 1, 0}; }

    std::int64_t p() const { return p_; }
    std::int64_t q() const { return q_; }
    std::int64_t r() const { return r_; }
    std::int64_t s() const { return s_; }

    MappingClass inverse() const { return {s_, -q_, -r_, p_}; }

    friend MappingClass operator*(const MappingClass& x, const MappingClass& y);
    friend bool operator==(const MappingClass&, const MappingClass&) = default;

private:
    std::int64_t p_, q_, r_, s_;
};

/// i(F_[a,b], F_[q,p]) = |a p - b q|.
double intersection(const MeasuredFoliation& f, const MeasuredFoliation& g);

/// gamma . [a,b] = [s a + r b, q a + p b]; the convention under which extremal length
/// is equivariant for the Moebius action on points.
MeasuredFoliation mcg_apply(const MappingClass& gamma, const MeasuredFoliation& f);
/// tau -> (p tau + q) / (r tau + s).
TorusPoint mcg_apply_point(const MappingClass& gamma, const TorusPoint& tau);
ProjectiveClass mcg_apply_slope(const MappingClass& gamma, const ProjectiveClass& u);

std::ostream& operator<<(std::ostream& os, const ProjectiveClass& u);
std::ostream& operator<<(std::ostream& os, const MeasuredFoliation& f);
std::ostream& operator<<(std::ostream& os, const MappingClass& g);

} // namespace teich
