#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <istream>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <boost/rational.hpp>

#include "teich/parallel.hpp"
#include "teich/rng.hpp"
#include "teich/teich_torus.hpp"

namespace teich {

class TrackError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Switch {
    std::vector<int> incoming;
    std::vector<int> outgoing;
};

using Rational = boost::rational<std::int64_t>;

/// Switch/branch combinatorics of a train track. Completeness of the track on its
/// surface is a documented attribute of a fixture, never checked topologically.
class TrainTrack {
public:
    /// Validates: ids unique, every branch end attached exactly twice, switches nonempty,
    /// switch/branch graph connected. Throws TrackError naming the offending branch or switch.
    TrainTrack(SurfaceType surface, std::vector<int> branches, std::vector<Switch> switches,
               bool allow_bigons = false, bool documented_complete = false);

    const SurfaceType& surface() const { return surface_; }
    const std::vector<int>& branches() const { return branches_; }
    const std::vector<Switch>& switches() const { return switches_; }
    bool allow_bigons() const { return allow_bigons_; }
    bool documented_complete() const { return documented_complete_; }
    /// Column of branch `id` in switch_matrix / WeightVector; throws for unknown ids.
    std::size_t column(int id) const;

private:
    SurfaceType surface_;
    std::vector<int> branches_;
    std::vector<Switch> switches_;
    bool allow_bigons_;
    bool documented_complete_;
};

/// Weights ordered like TrainTrack::branches().
struct WeightVector {
    std::vector<double> weights;

    double at(const TrainTrack& t, int id) const { return weights.at(t.column(id)); }
};

/// Rows: switches, columns: branches; +1 per incoming end, -1 per outgoing end.
Eigen::MatrixXi switch_matrix(const TrainTrack& t);

/// Rank by exact rational Gauss-Jordan elimination.
std::size_t rank_exact(const Eigen::MatrixXi& m);
/// Rank by singular values (Eigen JacobiSVD, threshold 1e-9 relative).
std::size_t rank_numeric(const Eigen::MatrixXi& m);

/// Nullity of the switch matrix; equals 6g - 6 + 2m for complete fixtures.
std::size_t cone_dimension(const TrainTrack& t);

/// Kernel basis of the switch matrix from the reduced row echelon form, one column per
/// free branch with a 1 in that branch's row. Entries are exact rationals.
std::vector<std::vector<Rational>> kernel_basis(const TrainTrack& t);
/// Same basis scaled column-wise to integers.
std::vector<std::vector<std::int64_t>> integer_kernel_basis(const TrainTrack& t);

/// Switch residuals (in - out at each switch) in exact arithmetic.
std::vector<Rational> switch_residuals_exact(const TrainTrack& t, const std::vector<Rational>& weights);
/// Max |in - out| over switches.
double switch_residual(const TrainTrack& t, const WeightVector& w);

struct ConeSample {
    std::vector<WeightVector> samples;
    std::size_t attempts = 0;
};

/// Uniform samples of {transverse measures with every weight <= bound}. Free-branch
/// coordinates are drawn uniformly from [0, bound]^d and the rest follow from the kernel
/// basis; draws with a negative or oversized weight are rejected. Throws TrackError if
/// the acceptance rate falls below min_acceptance.
ConeSample sample_cone(const TrainTrack& t, double bound, std::size_t n, const SeedStream& stream,
                       double min_acceptance = 1e-3);

struct VolumeEstimate {
    double volume = 0.0;
    double std_error = 0.0;
};

/// Lebesgue volume, in free-branch coordinates, of the transverse measures w with all
/// weights <= box_bound and region(w) true, by Monte Carlo over the box [0, box_bound]^d.
VolumeEstimate thurston_volume_estimate(const TrainTrack& t, const std::function<bool(const WeightVector&)>& region,
                                        double box_bound, std::size_t n, const SeedStream& stream,
                                        Exec exec = Exec::parallel);

/// Parses "traintrack g m", "branch <id>" and "switch in:<ids> out:<ids>" lines
/// (ids comma separated, '#' comments). Errors carry the line number.
TrainTrack parse_track(std::istream& in);
TrainTrack parse_track(const std::string& text);
std::string format_track(const TrainTrack& t);

namespace fixtures {

/// Trivalent track on the once-punctured torus: branches 1, 2, 3 between two switches,
/// w1 = w2 + w3. Documented complete; the cone is the quadrant (a, b) = (w2, w3).
TrainTrack punctured_torus();

/// One switch, one branch entering and leaving it.
TrainTrack single_loop();

} // namespace fixtures

} // namespace teich
