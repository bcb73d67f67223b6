#include "teich/sweeps.hpp"

#include <cmath>
#include <numbers>

#include "teich/poisson.hpp"
#include "teich/teich_torus.hpp"
#include "teich/thurston.hpp"

namespace teich::sweeps {

TorusPoint random_point(std::mt19937_64& g) {
    const double re = uniform(g, -3.0, 3.0);
    const double im = std::exp(uniform(g, -2.0, 2.0));
    return {re, im};
}

ProjectiveClass random_slope(std::mt19937_64& g) {
    return ProjectiveClass(std::tan(std::numbers::pi * (uniform_open01(g) - 0.5)));
}

MeasuredFoliation random_foliation(std::mt19937_64& g) {
    const double theta = uniform(g, 0.0, std::numbers::pi);
    const double r = std::exp(uniform(g, -2.0, 2.0));
    return {r * std::cos(theta), r * std::sin(theta)};
}

MappingClass random_mapping_class(std::mt19937_64& g, int bound) {
    const auto span = static_cast<std::uint64_t>(2 * bound + 1);
    auto entry = [&] { return static_cast<std::int64_t>(g() % span) - bound; };
    for (;;) {
        const std::int64_t p = entry(), q = entry(), r = entry(), s = entry();
        if (p * s - q * r == 1) return {p, q, r, s};
    }
}

double kernel_transport(std::size_t n, const SeedStream& s, Exec exec) {
    return max_over_samples(n, s, exec, [](std::mt19937_64& g) {
        const TorusPoint x0 = random_point(g), x = random_point(g);
        const ProjectiveClass u = random_slope(g);
        const double lhs = poisson_kernel(x0, x, u).value * BoundaryMeasure(x0).density(u);
        return std::abs(lhs / BoundaryMeasure(x).density(u) - 1.0);
    });
}

double rebase_identity(std::size_t n, const SeedStream& s, Exec exec) {
    return max_over_samples(n, s, exec, [](std::mt19937_64& g) {
        const TorusPoint x = random_point(g), y = random_point(g);
        const ProjectiveClass u = random_slope(g);
        const double rhs = rebase_density(x, y, u) * BoundaryMeasure(x).density(u);
        return std::abs(BoundaryMeasure(y).density(u) / rhs - 1.0);
    });
}

double kernel_reciprocity(std::size_t n, const SeedStream& s, Exec exec) {
    return max_over_samples(n, s, exec, [](std::mt19937_64& g) {
        const TorusPoint x = random_point(g), y = random_point(g);
        const ProjectiveClass u = random_slope(g);
        return std::abs(poisson_kernel(x, y, u).value * poisson_kernel(y, x, u).value - 1.0);
    });
}

double minsky_violation(std::size_t n, const SeedStream& s, Exec exec) {
    return max_over_samples(n, s, exec, [](std::mt19937_64& g) {
        const TorusPoint x = random_point(g);
        const MeasuredFoliation f = random_foliation(g), h = random_foliation(g);
        const double i = intersection(f, h);
        const double prod = extremal_length(x, f) * extremal_length(x, h);
        return (i * i - prod) / prod;
    });
}

double quasi_invariance_violation(std::size_t n, const SeedStream& s, Exec exec) {
    return max_over_samples(n, s, exec, [](std::mt19937_64& g) {
        const TorusPoint x = random_point(g), y = random_point(g);
        const MeasuredFoliation f = random_foliation(g);
        const double ratio = extremal_length(x, f) / extremal_length(y, f);
        const double k = std::exp(2.0 * teich_distance(x, y));
        return std::max(ratio / k - 1.0, 1.0 / (k * ratio) - 1.0);
    });
}

double mcg_equivariance(std::size_t n, const SeedStream& s, Exec exec) {
    return max_over_samples(n, s, exec, [](std::mt19937_64& g) {
        const MappingClass gamma = random_mapping_class(g);
        const TorusPoint x = random_point(g);
        const MeasuredFoliation f = random_foliation(g);
        const double moved = extremal_length(mcg_apply_point(gamma, x), mcg_apply(gamma, f));
        return std::abs(moved / extremal_length(x, f) - 1.0);
    });
}

double busemann_bound_violation(std::size_t n, const SeedStream& s, Exec exec) {
    return max_over_samples(n, s, exec, [](std::mt19937_64& g) {
        const TorusPoint x0 = random_point(g), x = random_point(g);
        const ProjectiveClass u = random_slope(g);
        return std::abs(busemann(x0, x, u)) - teich_distance(x0, x);
    });
}

double distance_closed_vs_sup(std::size_t n, const SeedStream& s, Exec exec) {
    return max_over_samples(n, s, exec, [](std::mt19937_64& g) {
        const TorusPoint x = random_point(g), y = random_point(g);
        return std::abs(teich_distance(x, y, DistanceMethod::closed_form) -
                        teich_distance(x, y, DistanceMethod::kerckhoff_sup));
    });
}

double log_abs_cayley(const TorusPoint& x, const TorusPoint& y) {
    return 0.5 * std::log1p(-4.0 * x.im() * y.im() / std::norm(y.z() - std::conj(x.z())));
}

double green_vs_disk(std::size_t n, const SeedStream& s, Exec exec) {
    return max_over_samples(n, s, exec, [](std::mt19937_64& g) {
        const TorusPoint x = random_point(g), y = random_point(g);
        return std::abs(green(x, y).value() - log_abs_cayley(x, y));
    });
}

} // namespace teich::sweeps
