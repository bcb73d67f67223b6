#include "teich/thurston.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "teich/teich_torus.hpp"

namespace teich {

double BoundaryMeasure::density(const ProjectiveClass& u) const {
    if (u.is_infinite()) return 0.0;
    return base_.im() / (std::numbers::pi * std::norm(u.slope() - base_.z()));
}

double BoundaryMeasure::cdf(double u) const {
    if (u == HUGE_VAL) return 1.0;
    if (u == -HUGE_VAL) return 0.0;
    return 0.5 + std::atan((u - base_.re()) / base_.im()) / std::numbers::pi;
}

double rebase_density(const TorusPoint& x, const TorusPoint& y, const ProjectiveClass& u) {
    return extremal_length(x, u) / extremal_length(y, u);
}

std::vector<double> sample_slopes(const BoundaryMeasure& m, std::size_t n, const SeedStream& stream, Exec exec) {
    const double re = m.base().re(), im = m.base().im();
    auto blocks = map_blocks<std::vector<double>>(n, stream, exec, [&](std::mt19937_64& g, std::size_t b, std::size_t e) {
        std::vector<double> out;
        out.reserve(e - b);
        for (std::size_t i = b; i < e; ++i) {
            out.push_back(re + im * std::tan(std::numbers::pi * (uniform_open01(g) - 0.5)));
        }
        return out;
    });
    std::vector<double> all;
    all.reserve(n);
    for (const auto& blk : blocks) all.insert(all.end(), blk.begin(), blk.end());
    return all;
}

std::vector<ProjectiveClass> sample(const BoundaryMeasure& m, std::size_t n, std::uint64_t seed, Exec exec) {
    std::vector<ProjectiveClass> out;
    if (n == 0) return out;
    const auto slopes = sample_slopes(m, n, SeedStream{seed, 0}, exec);
    out.reserve(slopes.size());
    for (double u : slopes) out.emplace_back(u);
    return out;
}

double ks_statistic(std::vector<double> slopes, const BoundaryMeasure& m) {
    if (slopes.empty()) throw std::invalid_argument("ks_statistic: empty sample");
    std::sort(slopes.begin(), slopes.end());
    const double n = static_cast<double>(slopes.size());
    double d = 0.0;
    for (std::size_t i = 0; i < slopes.size(); ++i) {
        const double f = m.cdf(slopes[i]);
        d = std::max(d, std::max(static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n));
    }
    return d;
}

double ks_threshold(std::size_t n) { return 1.63 / std::sqrt(static_cast<double>(n)); }

double mcg_pushforward_check(const MappingClass& gamma, const TorusPoint& x, std::size_t n, std::uint64_t seed,
                             Exec exec) {
    if (n < 1000) throw std::invalid_argument("mcg_pushforward_check: need n >= 1000");
    auto slopes = sample_slopes(BoundaryMeasure(x), n, SeedStream{seed, 0}, exec);
    for (double& u : slopes) u = mcg_apply_slope(gamma, ProjectiveClass(u)).slope();
    return ks_statistic(std::move(slopes), BoundaryMeasure(mcg_apply_point(gamma, x)));
}

QuadratureResult<double> hm_volume_check(const TorusPoint& x0, const TorusPoint& x, double tol) {
    QuadratureOptions opts;
    opts.tol = tol;
    const double peak = x.re();
    return integrate_boundary<double>([&](const ProjectiveClass& u) { return rebase_density(x0, x, u); }, x0, opts,
                                      std::span<const double>(&peak, 1));
}

} // namespace teich
