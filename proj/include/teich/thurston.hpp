#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "teich/foliation.hpp"
#include "teich/parallel.hpp"
#include "teich/quadrature.hpp"
#include "teich/torus_point.hpp"

namespace teich {

/// Thurston probability measure of `base` on PMF = RP^1, written in the slope chart:
/// d mu(u) = (1/pi) Im(base) / |u - base|^2 du, the Cauchy law centred at Re(base)
/// with scale Im(base).
class BoundaryMeasure {
public:
    explicit BoundaryMeasure(const TorusPoint& base) : base_(base) {}

    const TorusPoint& base() const { return base_; }

    /// Density in the u-chart; the point at infinity is null, so it returns 0 there.
    double density(const ProjectiveClass& u) const;
    /// mu((-inf, u]).
    double cdf(double u) const;

private:
    TorusPoint base_;
};

/// (Ext_x(F_u) / Ext_y(F_u))^xi with xi = 1. density(mu^y, u) = rebase_density(x, y, u) density(mu^x, u).
double rebase_density(const TorusPoint& x, const TorusPoint& y, const ProjectiveClass& u);

/// n i.i.d. draws from the measure; block-seeded so the output depends only on (seed, n).
std::vector<ProjectiveClass> sample(const BoundaryMeasure& m, std::size_t n, std::uint64_t seed,
                                    Exec exec = Exec::parallel);
/// Slopes only; draws are identical to sample().
std::vector<double> sample_slopes(const BoundaryMeasure& m, std::size_t n, const SeedStream& stream,
                                  Exec exec = Exec::parallel);

/// Kolmogorov-Smirnov distance between the empirical law of `slopes` and the measure.
/// Infinite slopes count as +infinity.
double ks_statistic(std::vector<double> slopes, const BoundaryMeasure& m);

/// Critical KS value at level 0.01, 1.63 / sqrt(n).
double ks_threshold(std::size_t n);

/// Pushes n draws of mu^x through gamma and returns their KS distance to mu^{gamma x}.
double mcg_pushforward_check(const MappingClass& gamma, const TorusPoint& x, std::size_t n, std::uint64_t seed,
                             Exec exec = Exec::parallel);

/// Integral of rebase_density(x0, x, .) against mu^{x0}; equals 1 when the Thurston
/// volume of the unit extremal-length ball does not depend on the base point.
QuadratureResult<double> hm_volume_check(const TorusPoint& x0, const TorusPoint& x, double tol = 1e-12);

/// Axis-parallel rectangle [a0,a1] x [b0,b1] in the (a,b) chart of MF, with Lebesgue measure.
struct FoliationRectangle {
    double a0, a1, b0, b1;

    double measure() const { return (a1 - a0) * (b1 - b0); }
    FoliationRectangle scaled(double t) const { return {t * a0, t * a1, t * b0, t * b1}; }
};

} // namespace teich
