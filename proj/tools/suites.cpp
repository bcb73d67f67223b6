#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "cli.hpp"
#include "teich/poisson.hpp"
#include "teich/registry.hpp"
#include "teich/sweeps.hpp"
#include "teich/teich_torus.hpp"
#include "teich/thurston.hpp"
#include "teich/traintrack.hpp"

namespace teich::cli {

namespace {

using cplx = std::complex<double>;

constexpr const char* kAnchorTransport = "PH measure is Thurston measure";
constexpr const char* kAnchorPoisson = "Poisson integral formula";
constexpr const char* kAnchorHm = "Mirzakhani and Dumas";
constexpr const char* kAnchorMinsky = "called Minsky's inequality";
constexpr const char* kAnchorQuasi = "a conformal quasi-invariant";
constexpr const char* kAnchorKerckhoff = "sharp by the Kerckhoff formula";
constexpr const char* kAnchorGreen = "the pluricomplex Green function";
constexpr const char* kAnchorMa = "homogeneous Monge-Ampere equation";
constexpr const char* kAnchorRay = "Teichmuller (geodesic) ray";
constexpr const char* kAnchorSchwarz = "Schwarz type theorem";
constexpr const char* kAnchorGreenFormula = "Green formula";
constexpr const char* kAnchorResidue = "From the residue theorem";
constexpr const char* kAnchorMcg = "mapping class group invariance of extremal length and Thurston measure";
constexpr const char* kAnchorHomogeneity = "multiplicative homogeneity of the Thurston measure";

// Sub-stream ids keep every stochastic check on its own stream, independent of suite order.
enum Stream : std::uint64_t {
    s_transport = 1,
    s_rebase,
    s_reciprocity,
    s_hm,
    s_minsky,
    s_quasi,
    s_kerckhoff,
    s_maximizer,
    s_busemann,
    s_green,
    s_harmonic,
    s_equivariance,
    s_gammas,
    s_pushforward,
    s_volume_small,
    s_volume_large,
};

class Suite {
public:
    explicit Suite(const RunConfig& cfg) : cfg_(cfg) {}

    std::size_t n_or(std::size_t fallback) const { return cfg_.n.value_or(fallback); }
    double tol_or(double fallback) const { return cfg_.tol.value_or(fallback); }
    SeedStream stream(std::uint64_t id) const { return {cfg_.seed, id}; }
    Exec exec() const { return cfg_.exec; }
    const RunConfig& config() const { return cfg_; }
    TorusPoint base() const { return cfg_.base ? parse_point(*cfg_.base) : TorusPoint::square(); }

    void check(std::string name, const char* anchor, Comparison cmp, double expected, double tolerance,
               const std::function<double()>& compute) {
        const auto start = std::chrono::steady_clock::now();
        const double value = compute();
        const auto stop = std::chrono::steady_clock::now();
        CheckRecord r;
        r.name = std::move(name);
        r.anchor = anchor;
        r.value = value;
        r.expected = expected;
        r.tolerance = tolerance;
        r.comparison = cmp;
        switch (cmp) {
        case Comparison::abs_diff: r.pass = std::abs(value - expected) <= tolerance; break;
        case Comparison::upper_bound: r.pass = value <= expected + tolerance; break;
        case Comparison::lower_bound: r.pass = value >= expected - tolerance; break;
        }
        if (!std::isfinite(value)) r.pass = false;
        if (cfg_.timings) r.runtime_ms = std::chrono::duration<double, std::milli>(stop - start).count();
        records.push_back(std::move(r));
    }

    std::vector<CheckRecord> records;

private:
    const RunConfig& cfg_;
};

void kernel_transport(Suite& s) {
    const std::size_t n = s.n_or(100000);
    const double tol = s.tol_or(1e-12);
    s.check("kernel transport P rho_x0 / rho_x - 1", kAnchorTransport, Comparison::upper_bound, 0.0, tol,
            [&] { return sweeps::kernel_transport(n, s.stream(s_transport), s.exec()); });
    s.check("rebase density rho_y / (rebase rho_x) - 1", kAnchorTransport, Comparison::upper_bound, 0.0, tol,
            [&] { return sweeps::rebase_identity(n, s.stream(s_rebase), s.exec()); });
    s.check("kernel reciprocity P(x,y) P(y,x) - 1", kAnchorTransport, Comparison::upper_bound, 0.0, tol,
            [&] { return sweeps::kernel_reciprocity(n, s.stream(s_reciprocity), s.exec()); });
}

void poisson_reproduction(Suite& s) {
    const double tol = s.tol_or(1e-8);
    const TorusPoint x0 = s.base();
    for (const auto& v : families::harmonic_family()) {
        s.check("P[" + v.name + "] - " + v.name + " on 5x5 grid", kAnchorPoisson, Comparison::upper_bound, 0.0,
                tol, [&] {
                    double worst = 0.0;
                    for (double re : {-2.0, -1.0, 0.0, 1.0, 2.0}) {
                        for (double im : {0.25, 0.5, 1.0, 2.0, 4.0}) {
                            const TorusPoint x(re, im);
                            const cplx p = poisson_integral(v.trace, x0, x, 1e-3 * tol).value;
                            worst = std::max(worst, std::abs(p - v.value(x)));
                        }
                    }
                    return worst;
                });
    }
}

void hm_constant(Suite& s) {
    const double tol = s.tol_or(1e-10);
    if (s.config().target) {
        const TorusPoint x0 = s.base(), x = parse_point(*s.config().target);
        s.check("integral of P(x0,x,.) d mu^x0", kAnchorHm, Comparison::abs_diff, 1.0, tol,
                [&] { return hm_volume_check(x0, x).value; });
        return;
    }
    const std::size_t pairs = s.n_or(20);
    auto g = block_engine(s.stream(s_hm), 0);
    for (std::size_t k = 0; k < pairs; ++k) {
        const TorusPoint x0 = s.config().base ? s.base() : sweeps::random_point(g);
        const TorusPoint x = sweeps::random_point(g);
        std::ostringstream name;
        name << "integral of P(x0,x,.) d mu^x0, x0 = " << format_point(x0) << ", x = " << format_point(x);
        s.check(name.str(), kAnchorHm, Comparison::abs_diff, 1.0, tol, [&] { return hm_volume_check(x0, x).value; });
    }
}

void minsky(Suite& s) {
    const std::size_t n = s.n_or(100000);
    const double tol = s.tol_or(1e-12);
    s.check("Minsky slack max (i^2 - Ext Ext) / (Ext Ext)", kAnchorMinsky, Comparison::upper_bound, 0.0, tol,
            [&] { return sweeps::minsky_violation(n, s.stream(s_minsky), s.exec()); });
    s.check("Minsky equality at i for [1,0], [0,1]", kAnchorMinsky, Comparison::abs_diff, 0.0, tol, [] {
        const TorusPoint x = TorusPoint::square();
        const MeasuredFoliation f(1.0, 0.0), g(0.0, 1.0);
        const double i = intersection(f, g);
        return extremal_length(x, f) * extremal_length(x, g) - i * i;
    });
    s.check("quasi-invariance excess outside [e^-2d, e^2d]", kAnchorQuasi, Comparison::upper_bound, 0.0, tol,
            [&] { return sweeps::quasi_invariance_violation(n, s.stream(s_quasi), s.exec()); });
}

void kerckhoff(Suite& s) {
    const std::size_t n = s.n_or(10000);
    const double tol = s.tol_or(1e-9);
    s.check("closed-form vs sup distance", kAnchorKerckhoff, Comparison::upper_bound, 0.0, tol,
            [&] { return sweeps::distance_closed_vs_sup(n, s.stream(s_kerckhoff), s.exec()); });
    s.check("sup maximizer angle shift, grid 4096 -> 16384", kAnchorKerckhoff, Comparison::upper_bound, 0.0, 1e-6,
            [&] {
                const std::size_t pairs = std::min<std::size_t>(n, 1000);
                return max_over_samples(pairs, s.stream(s_maximizer), s.exec(), [](std::mt19937_64& g) {
                    const TorusPoint x = sweeps::random_point(g), y = sweeps::random_point(g);
                    const double a = kerckhoff_sup(x, y, 4096).maximizer.angle();
                    const double b = kerckhoff_sup(x, y, 16384).maximizer.angle();
                    const double d = std::abs(a - b);
                    return std::min(d, std::numbers::pi - d);
                });
            });
    s.check("busemann bound |beta| - d_T", kAnchorKerckhoff, Comparison::upper_bound, 0.0, tol,
            [&] { return sweeps::busemann_bound_violation(n, s.stream(s_busemann), s.exec()); });
}

// Scaled five-point stencil |sum of neighbours - 4 u| / |u| of u_F at spacing h.
double stencil_residual(const TorusPoint& x, const MeasuredFoliation& f, double h) {
    auto u = [&](double dx, double dy) { return u_exhaustion(TorusPoint(x.re() + dx, x.im() + dy), f); };
    const double c = u(0.0, 0.0);
    return std::abs(u(h, 0.0) + u(-h, 0.0) + u(0.0, h) + u(0.0, -h) - 4.0 * c) / std::abs(c);
}

void green(Suite& s) {
    const std::size_t n = s.n_or(10000);
    const double tol = s.tol_or(1e-10);
    s.check("log tanh d_T vs log |cayley|", kAnchorGreen, Comparison::upper_bound, 0.0, tol,
            [&] { return sweeps::green_vs_disk(n, s.stream(s_green), s.exec()); });
    s.check("u_F five-point Laplacian, h = 1e-3, scaled", kAnchorMa, Comparison::upper_bound, 0.0, 1e-5, [&] {
        return max_over_samples(n, s.stream(s_harmonic), s.exec(), [](std::mt19937_64& g) {
            return stencil_residual(sweeps::random_point(g), sweeps::random_foliation(g), 1e-3);
        });
    });

    // Along rays from i, g / (-e^{-2d}) and u_{G,H} / (-e^{-2d}) stay in a bounded positive band.
    const TorusPoint y0 = TorusPoint::square();
    const MeasuredFoliation gf(1.0, 0.0), hf(0.0, 1.0);
    const std::vector<ProjectiveClass> directions{ProjectiveClass(0.3), ProjectiveClass(-1.7), ProjectiveClass(2.5),
                                                  ProjectiveClass::infinity()};
    auto band = [&](bool use_green) {
        double lo = INFINITY, hi = 0.0;
        for (const auto& u : directions) {
            for (double t = 1.0; t <= 10.0; t += 0.25) {
                const TorusPoint x = teich_ray(y0, u, t);
                const double scale = -std::exp(-2.0 * teich_distance(y0, x));
                const double v = use_green ? green(y0, x).value() : u_pair(x, gf, hf);
                lo = std::min(lo, v / scale);
                hi = std::max(hi, v / scale);
            }
        }
        return lo > 0.0 ? hi / lo : INFINITY;
    };
    s.check("g / -e^{-2d} spread along rays, t in [1,10]", kAnchorGreen, Comparison::upper_bound, 0.0, 100.0,
            [&] { return band(true); });
    s.check("u_{G,H} / -e^{-2d} spread along rays, t in [1,10]", kAnchorGreen, Comparison::upper_bound, 0.0, 100.0,
            [&] { return band(false); });

    s.check("exp pairing Cauchy tail along rays, t >= 15", kAnchorRay, Comparison::upper_bound, 0.0, 1e-6, [&] {
        const TorusPoint other(0.7, 0.4);
        double worst = 0.0;
        for (const auto& u : directions) {
            const double limit = exp_pairing(y0, teich_ray(y0, u, 40.0), other);
            for (double t = 15.0; t <= 30.0; t += 1.0) {
                worst = std::max(worst, std::abs(exp_pairing(y0, teich_ray(y0, u, t), other) - limit));
            }
        }
        return worst;
    });
}

void schwarz(Suite& s) {
    const PlaneFunction v = families::poisson_bump();
    const std::vector<double> heights{1.0, 0.1, 0.01, 0.001};
    const double v0 = v.trace(ProjectiveClass(0.0)).real();
    const auto values = schwarz_probe(v.trace, TorusPoint::square(), ProjectiveClass(0.0), heights);
    std::vector<double> gaps;
    for (const auto& p : values) gaps.push_back(std::abs(p - v0));
    s.check("non-decreasing steps of |P[V](ih) - V(0)|", kAnchorSchwarz, Comparison::abs_diff, 0.0, 0.0, [&] {
        double bad = 0.0;
        for (std::size_t k = 1; k < gaps.size(); ++k) bad += gaps[k] >= gaps[k - 1] ? 1.0 : 0.0;
        return bad;
    });
    s.check("final gap at h = 1e-3", kAnchorSchwarz, Comparison::upper_bound, 0.0, s.tol_or(1e-3),
            [&] { return gaps.back(); });
}

std::vector<TorusPoint> green_formula_points() {
    return {{0.0, 1.0}, {0.5, 1.0}, {-1.0, 2.0}, {1.0, 0.5}, {2.0, 1.5}};
}

void green_formula(Suite& s) {
    const double tol = s.tol_or(1e-4);
    const TorusPoint x0 = s.base();
    s.check("kappa calibrated on |cayley|^2 at i", kAnchorGreenFormula, Comparison::abs_diff,
            0.5 / std::numbers::pi, 1e-9, [] { return green_formula_kappa(); });
    for (const auto& v : families::psh_family()) {
        s.check("boundary - bulk - V(x) for " + v.name + " at 5 points", kAnchorGreenFormula,
                Comparison::upper_bound, 0.0, tol, [&] {
                    double worst = 0.0;
                    for (const auto& x : green_formula_points()) {
                        worst = std::max(worst, std::abs(green_formula_residual(v, x, x0).residual()));
                    }
                    return worst;
                });
    }
}

void derivative(Suite& s) {
    const double tol = s.tol_or(1e-8);
    const auto c1 = families::cayley_power(1);
    const TorusPoint i = TorusPoint::square();
    s.check("Re average of cayley trace at i", kAnchorResidue, Comparison::abs_diff, -1.0, tol,
            [&] { return derivative_average(c1.trace, i).real(); });
    s.check("Im average of cayley trace at i", kAnchorResidue, Comparison::abs_diff, 0.0, tol,
            [&] { return derivative_average(c1.trace, i).imag(); });
    // The same residue integral written in u directly, with the density of mu^i divided out.
    s.check("|integral of c(u) (-1/pi) (u-i)^-2 du + 1|", kAnchorResidue, Comparison::upper_bound, 0.0, tol, [&] {
        QuadratureOptions opts;
        opts.tol = 1e-12;
        const auto r = integrate_boundary<cplx>(
            [&](const ProjectiveClass& u) {
                if (u.is_infinite()) return -c1.trace(u);
                const cplx d = u.slope() - i.z();
                return c1.trace(u) * (-std::norm(d) / (d * d));
            },
            i, opts);
        return std::abs(r.value + 1.0);
    });
    for (int n = 1; n <= 3; ++n) {
        const auto h = families::cayley_power(n);
        s.check("|average + 2i f'(x)| for " + h.name + " on grid", kAnchorResidue, Comparison::upper_bound, 0.0,
                tol, [&] {
                    double worst = 0.0;
                    for (const auto& x : default_cr_grid()) {
                        const cplx expected = cplx(0.0, -2.0) * h.derivative(x.z());
                        worst = std::max(worst, std::abs(derivative_average(h.trace, x) - expected));
                    }
                    return worst;
                });
    }
}

void cr(Suite& s) {
    const double tol = s.tol_or(1e-8);
    const auto grid = default_cr_grid();
    for (int n = 1; n <= 3; ++n) {
        const auto h = families::cayley_power(n);
        s.check("cr_check on " + h.name, kAnchorResidue, Comparison::upper_bound, 0.0, tol,
                [&] { return cr_check(h.trace, grid); });
    }
    const auto c1 = families::cayley_power(1);
    s.check("cr_check on " + c1.conjugate_trace.name, kAnchorResidue, Comparison::lower_bound, 1e-2, 0.0,
            [&] { return cr_check(c1.conjugate_trace, grid); });
}

void mcg(Suite& s) {
    const std::size_t n = s.n_or(100000);
    s.check("Ext_{gamma x}(gamma F) / Ext_x(F) - 1", kAnchorMcg, Comparison::upper_bound, 0.0, s.tol_or(1e-12),
            [&] { return sweeps::mcg_equivariance(n, s.stream(s_equivariance), s.exec()); });
    auto g = block_engine(s.stream(s_gammas), 0);
    const TorusPoint x = s.base();
    for (int k = 0; k < 10; ++k) {
        const MappingClass gamma = sweeps::random_mapping_class(g, 5);
        std::ostringstream name;
        name << "KS pushforward of mu^x by " << gamma;
        const std::uint64_t seed = block_engine(s.stream(s_pushforward), static_cast<std::uint64_t>(k))();
        s.check(name.str(), kAnchorMcg, Comparison::upper_bound, ks_threshold(n), 0.0,
                [&] { return mcg_pushforward_check(gamma, x, n, seed, s.exec()); });
    }
}

void thurston_homogeneity(Suite& s) {
    const TrainTrack t = fixtures::punctured_torus();
    s.check("torus fixture cone dimension", kAnchorHomogeneity, Comparison::abs_diff, 2.0, 0.0,
            [&] { return static_cast<double>(cone_dimension(t)); });
    s.check("torus fixture exact vs numeric rank", kAnchorHomogeneity, Comparison::abs_diff, 0.0, 0.0, [&] {
        const auto m = switch_matrix(t);
        return static_cast<double>(rank_exact(m)) - static_cast<double>(rank_numeric(m));
    });

    const std::size_t n = s.n_or(1000000);
    const FoliationRectangle r{0.2, 0.7, 0.1, 0.6};
    const double factor = 2.0;
    const double box = 3.0;
    const int b2 = t.column(2), b3 = t.column(3);
    auto inside = [&](const FoliationRectangle& q) {
        return [=](const WeightVector& w) {
            const double a = w.weights[b2], b = w.weights[b3];
            return a >= q.a0 && a <= q.a1 && b >= q.b0 && b <= q.b1;
        };
    };
    const auto small = thurston_volume_estimate(t, inside(r), box, n, s.stream(s_volume_small), s.exec());
    const auto large = thurston_volume_estimate(t, inside(r.scaled(factor)), box, n, s.stream(s_volume_large),
                                                s.exec());
    const double ratio = large.volume / small.volume;
    const double se = ratio * std::hypot(small.std_error / small.volume, large.std_error / large.volume);
    s.check("volume ratio of 2R to R (tolerance 3 standard errors)", kAnchorHomogeneity, Comparison::abs_diff,
            std::pow(factor, 2.0 * SurfaceType::punctured_torus().complexity()), 3.0 * se, [&] { return ratio; });
    s.check("volume of R vs its (a,b) rectangle measure (tolerance 3 standard errors)", kAnchorHomogeneity,
            Comparison::abs_diff, r.measure(), 3.0 * small.std_error, [&] { return small.volume; });
}

struct SuiteEntry {
    const char* name;
    void (*run)(Suite&);
};

const std::vector<SuiteEntry>& registry() {
    static const std::vector<SuiteEntry> suites{
        {"kernel-transport", kernel_transport},
        {"poisson-reproduction", poisson_reproduction},
        {"hm-constant", hm_constant},
        {"minsky", minsky},
        {"kerckhoff", kerckhoff},
        {"green", green},
        {"schwarz", schwarz},
        {"green-formula", green_formula},
        {"derivative", derivative},
        {"cr", cr},
        {"mcg", mcg},
        {"thurston-homogeneity", thurston_homogeneity},
    };
    return suites;
}

} // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& e : registry()) out.emplace_back(e.name);
        out.emplace_back("all");
        return out;
    }();
    return names;
}

Report run_suite(const RunConfig& cfg) {
    cfg.validate();
    Report report;
    report.suite = cfg.suite;
    report.config = cfg;
    bool found = false;
    for (const auto& e : registry()) {
        if (cfg.suite != "all" && cfg.suite != e.name) continue;
        found = true;
        Suite s(cfg);
        e.run(s);
        for (auto& r : s.records) {
            if (cfg.suite == "all") r.name = std::string(e.name) + ": " + r.name;
            report.records.push_back(std::move(r));
        }
    }
    if (!found) throw std::invalid_argument("unknown suite '" + cfg.suite + "'");
    return report;
}

} // namespace teich::cli
