#include "teich/traintrack.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace teich {

namespace {

// Reduced row echelon form over Q; returns pivot columns.
std::vector<std::size_t> rref(std::vector<std::vector<Rational>>& a, std::size_t cols) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t c = 0; c < cols && row < a.size(); ++c) {
        std::size_t pr = row;
        while (pr < a.size() && a[pr][c].numerator() == 0) ++pr;
        if (pr == a.size()) continue;
        std::swap(a[row], a[pr]);
        const Rational inv = Rational(1) / a[row][c];
        for (auto& v : a[row]) v *= inv;
        for (std::size_t r = 0; r < a.size(); ++r) {
            if (r == row || a[r][c].numerator() == 0) continue;
            const Rational f = a[r][c];
            for (std::size_t k = 0; k < cols; ++k) a[r][k] -= f * a[row][k];
        }
        pivots.push_back(c);
        ++row;
    }
    return pivots;
}

std::vector<std::vector<Rational>> to_rational(const Eigen::MatrixXi& m) {
    std::vector<std::vector<Rational>> a(static_cast<std::size_t>(m.rows()),
                                         std::vector<Rational>(static_cast<std::size_t>(m.cols())));
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = m(i, j);
    }
    return a;
}

Eigen::MatrixXd basis_matrix(const TrainTrack& t) {
    const auto basis = kernel_basis(t);
    Eigen::MatrixXd k(static_cast<Eigen::Index>(t.branches().size()), static_cast<Eigen::Index>(basis.size()));
    for (std::size_t j = 0; j < basis.size(); ++j) {
        for (std::size_t i = 0; i < basis[j].size(); ++i) {
            k(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = boost::rational_cast<double>(basis[j][i]);
        }
    }
    return k;
}

std::vector<int> parse_ids(const std::string& list, std::size_t line_no) {
    std::vector<int> ids;
    if (list.empty()) return ids;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t pos = 0;
            const int id = std::stoi(item, &pos);
            if (pos != item.size()) throw std::invalid_argument(item);
            ids.push_back(id);
        } catch (const std::exception&) {
            throw TrackError("line " + std::to_string(line_no) + ": bad branch id '" + item + "'");
        }
    }
    return ids;
}

std::string join(const std::vector<int>& ids) {
    std::string s;
    for (std::size_t i = 0; i < ids.size(); ++i) s += (i ? "," : "") + std::to_string(ids[i]);
    return s;
}

} // namespace

TrainTrack::TrainTrack(SurfaceType surface, std::vector<int> branches, std::vector<Switch> switches, bool allow_bigons,
                       bool documented_complete)
    : surface_(surface), branches_(std::move(branches)), switches_(std::move(switches)), allow_bigons_(allow_bigons),
      documented_complete_(documented_complete) {
    if (branches_.empty()) throw TrackError("train track has no branches");
    if (switches_.empty()) throw TrackError("train track has no switches");
    std::set<int> seen;
    for (int id : branches_) {
        if (!seen.insert(id).second) throw TrackError("duplicate branch id " + std::to_string(id));
    }
    std::map<int, std::vector<std::size_t>> ends;
    for (std::size_t s = 0; s < switches_.size(); ++s) {
        if (switches_[s].incoming.empty() || switches_[s].outgoing.empty()) {
            throw TrackError("switch " + std::to_string(s) + " needs branches on both sides");
        }
        for (const auto* side : {&switches_[s].incoming, &switches_[s].outgoing}) {
            for (int id : *side) {
                if (!seen.count(id)) {
                    throw TrackError("switch " + std::to_string(s) + " references unknown branch " + std::to_string(id));
                }
                ends[id].push_back(s);
            }
        }
    }
    for (int id : branches_) {
        const std::size_t count = ends[id].size();
        if (count != 2) {
            throw TrackError("branch " + std::to_string(id) + " has " + std::to_string(count) +
                             " attached ends, expected 2");
        }
    }
    // connectivity of the switch graph
    std::vector<std::size_t> parent(switches_.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& [id, sw] : ends) parent[find(sw[0])] = find(sw[1]);
    for (std::size_t s = 1; s < switches_.size(); ++s) {
        if (find(s) != find(0)) {
            throw TrackError("train track is disconnected: switch " + std::to_string(s) +
                             " is not connected to switch 0");
        }
    }
}

std::size_t TrainTrack::column(int id) const {
    auto it = std::find(branches_.begin(), branches_.end(), id);
    if (it == branches_.end()) throw TrackError("unknown branch id " + std::to_string(id));
    return static_cast<std::size_t>(it - branches_.begin());
}

Eigen::MatrixXi switch_matrix(const TrainTrack& t) {
    Eigen::MatrixXi m = Eigen::MatrixXi::Zero(static_cast<Eigen::Index>(t.switches().size()),
                                              static_cast<Eigen::Index>(t.branches().size()));
    for (std::size_t s = 0; s < t.switches().size(); ++s) {
        const auto row = static_cast<Eigen::Index>(s);
        for (int id : t.switches()[s].incoming) m(row, static_cast<Eigen::Index>(t.column(id))) += 1;
        for (int id : t.switches()[s].outgoing) m(row, static_cast<Eigen::Index>(t.column(id))) -= 1;
    }
    return m;
}

std::size_t rank_exact(const Eigen::MatrixXi& m) {
    auto a = to_rational(m);
    return rref(a, static_cast<std::size_t>(m.cols())).size();
}

std::size_t rank_numeric(const Eigen::MatrixXi& m) {
    if (m.size() == 0) return 0;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m.cast<double>());
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || sv(0) == 0.0) return 0;
    std::size_t r = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        if (sv(i) > 1e-9 * sv(0)) ++r;
    }
    return r;
}

std::size_t cone_dimension(const TrainTrack& t) { return t.branches().size() - rank_exact(switch_matrix(t)); }

std::vector<std::vector<Rational>> kernel_basis(const TrainTrack& t) {
    const Eigen::MatrixXi m = switch_matrix(t);
    const auto cols = static_cast<std::size_t>(m.cols());
    auto a = to_rational(m);
    const auto pivots = rref(a, cols);
    std::vector<bool> is_pivot(cols, false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<std::vector<Rational>> basis;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Rational> v(cols, Rational(0));
        v[f] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a[r][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

std::vector<std::vector<std::int64_t>> integer_kernel_basis(const TrainTrack& t) {
    std::vector<std::vector<std::int64_t>> out;
    for (const auto& v : kernel_basis(t)) {
        std::int64_t l = 1;
        for (const auto& x : v) l = std::lcm(l, x.denominator());
        std::vector<std::int64_t> iv;
        for (const auto& x : v) iv.push_back(x.numerator() * (l / x.denominator()));
        out.push_back(std::move(iv));
    }
    return out;
}

std::vector<Rational> switch_residuals_exact(const TrainTrack& t, const std::vector<Rational>& weights) {
    if (weights.size() != t.branches().size()) throw TrackError("weight vector has the wrong length");
    std::vector<Rational> res;
    for (const auto& sw : t.switches()) {
        Rational r(0);
        for (int id : sw.incoming) r += weights[t.column(id)];
        for (int id : sw.outgoing) r -= weights[t.column(id)];
        res.push_back(r);
    }
    return res;
}

double switch_residual(const TrainTrack& t, const WeightVector& w) {
    if (w.weights.size() != t.branches().size()) throw TrackError("weight vector has the wrong length");
    double worst = 0.0;
    for (const auto& sw : t.switches()) {
        double r = 0.0;
        for (int id : sw.incoming) r += w.weights[t.column(id)];
        for (int id : sw.outgoing) r -= w.weights[t.column(id)];
        worst = std::max(worst, std::abs(r));
    }
    return worst;
}

namespace {

// w = K c with c uniform in [0, bound]^d; true if w lies in the bounded cone.
bool draw_weights(const Eigen::MatrixXd& k, double bound, std::mt19937_64& g, Eigen::VectorXd& c,
                  Eigen::VectorXd& w) {
    for (Eigen::Index j = 0; j < c.size(); ++j) c(j) = uniform(g, 0.0, bound);
    w.noalias() = k * c;
    for (Eigen::Index i = 0; i < w.size(); ++i) {
        if (w(i) < 0.0 || w(i) > bound) return false;
    }
    return true;
}

} // namespace

ConeSample sample_cone(const TrainTrack& t, double bound, std::size_t n, const SeedStream& stream,
                       double min_acceptance) {
    if (!(bound > 0.0)) throw TrackError("sample_cone: bound must be positive");
    const Eigen::MatrixXd k = basis_matrix(t);
    if (k.cols() == 0) throw TrackError("sample_cone: the transverse-measure cone is {0}");
    ConeSample out;
    Eigen::VectorXd c(k.cols()), w(k.rows());
    for (std::uint64_t block = 0; out.samples.size() < n; ++block) {
        auto g = block_engine(stream, block);
        for (std::size_t i = 0; i < kRngBlockSize && out.samples.size() < n; ++i) {
            ++out.attempts;
            if (draw_weights(k, bound, g, c, w)) {
                out.samples.push_back({std::vector<double>(w.data(), w.data() + w.size())});
            }
        }
        if (out.attempts >= 10000 &&
            static_cast<double>(out.samples.size()) < min_acceptance * static_cast<double>(out.attempts)) {
            throw TrackError("sample_cone: acceptance rate below " + std::to_string(min_acceptance) +
                             "; use a tighter kernel basis");
        }
    }
    return out;
}

VolumeEstimate thurston_volume_estimate(const TrainTrack& t, const std::function<bool(const WeightVector&)>& region,
                                        double box_bound, std::size_t n, const SeedStream& stream, Exec exec) {
    if (!(box_bound > 0.0)) throw TrackError("thurston_volume_estimate: bound must be positive");
    const Eigen::MatrixXd k = basis_matrix(t);
    const double box = std::pow(box_bound, static_cast<double>(k.cols()));
    auto est = mean_over_samples(n, stream, exec, [&](std::mt19937_64& g) {
        Eigen::VectorXd c(k.cols()), w(k.rows());
        if (!draw_weights(k, box_bound, g, c, w)) return 0.0;
        return region(WeightVector{std::vector<double>(w.data(), w.data() + w.size())}) ? 1.0 : 0.0;
    });
    return {box * est.mean, box * est.std_error};
}

TrainTrack parse_track(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    int g = 0, m = 0;
    std::vector<int> branches;
    std::set<int> seen;
    std::map<int, std::size_t> declared_at;
    std::map<int, int> end_count;
    std::vector<Switch> switches;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string word;
        if (!(ls >> word)) continue;
        const std::string where = "line " + std::to_string(line_no) + ": ";
        if (!have_header) {
            if (word != "traintrack" || !(ls >> g >> m)) throw TrackError(where + "expected 'traintrack <g> <m>'");
            have_header = true;
        } else if (word == "branch") {
            int id = 0;
            if (!(ls >> id)) throw TrackError(where + "expected 'branch <id>'");
            if (!seen.insert(id).second) throw TrackError(where + "duplicate branch id " + std::to_string(id));
            branches.push_back(id);
            declared_at[id] = line_no;
        } else if (word == "switch") {
            Switch sw;
            std::string part;
            bool in_seen = false, out_seen = false;
            while (ls >> part) {
                if (part.rfind("in:", 0) == 0) {
                    sw.incoming = parse_ids(part.substr(3), line_no);
                    in_seen = true;
                } else if (part.rfind("out:", 0) == 0) {
                    sw.outgoing = parse_ids(part.substr(4), line_no);
                    out_seen = true;
                } else {
                    throw TrackError(where + "unexpected token '" + part + "'");
                }
            }
            if (!in_seen || !out_seen) throw TrackError(where + "expected 'switch in:<ids> out:<ids>'");
            for (const auto* side : {&sw.incoming, &sw.outgoing}) {
                for (int id : *side) {
                    if (!seen.count(id)) throw TrackError(where + "unknown branch id " + std::to_string(id));
                    if (++end_count[id] > 2) {
                        throw TrackError(where + "branch " + std::to_string(id) + " has more than two ends");
                    }
                }
            }
            switches.push_back(std::move(sw));
        } else {
            throw TrackError(where + "unknown directive '" + word + "'");
        }
    }
    if (!have_header) throw TrackError("line " + std::to_string(line_no) + ": missing 'traintrack' header");
    for (int id : branches) {
        if (end_count[id] != 2) {
            throw TrackError("line " + std::to_string(declared_at[id]) + ": branch " + std::to_string(id) + " has " +
                             std::to_string(end_count[id]) + " attached ends, expected 2");
        }
    }
    try {
        return TrainTrack(SurfaceType(g, m), std::move(branches), std::move(switches));
    } catch (const std::invalid_argument& e) {
        throw TrackError(std::string("line 1: ") + e.what());
    } catch (const TrackError& e) {
        throw TrackError("line " + std::to_string(line_no) + ": " + e.what());
    }
}

TrainTrack parse_track(const std::string& text) {
    std::istringstream in(text);
    return parse_track(in);
}

std::string format_track(const TrainTrack& t) {
    std::ostringstream os;
    os << "traintrack " << t.surface().genus() << " " << t.surface().punctures() << "\n";
    for (int id : t.branches()) os << "branch " << id << "\n";
    for (const auto& sw : t.switches()) os << "switch in:" << join(sw.incoming) << " out:" << join(sw.outgoing) << "\n";
    return os.str();
}

namespace fixtures {

TrainTrack punctured_torus() {
    return TrainTrack(SurfaceType::punctured_torus(), {1, 2, 3}, {Switch{{1}, {2, 3}}, Switch{{2, 3}, {1}}}, false,
                      true);
}

TrainTrack single_loop() { return TrainTrack(SurfaceType::punctured_torus(), {1}, {Switch{{1}, {1}}}); }

} // namespace fixtures

} // namespace teich
