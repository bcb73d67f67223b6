#pragma once

// Block-parallel kernels. Every stochastic loop in the library is split into blocks of
// kRngBlockSize draws with an independent engine per block; the parallel path runs the
// blocks under OpenMP and the serial path runs the same blocks in order. Results are
// combined in block order, so both paths return identical bits.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "teich/rng.hpp"

namespace teich {

enum class Exec { serial, parallel };

inline std::size_t block_count(std::size_t n) { return (n + kRngBlockSize - 1) / kRngBlockSize; }

/// body(engine, begin, end) -> R for each block [begin, end) of [0, n).
template <class R, class Body>
std::vector<R> map_blocks(std::size_t n, const SeedStream& stream, Exec exec, Body&& body) {
    const std::size_t blocks = block_count(n);
    std::vector<R> out(blocks);
    auto run = [&](std::size_t b) {
        auto engine = block_engine(stream, b);
        const std::size_t begin = b * kRngBlockSize;
        const std::size_t end = std::min(n, begin + kRngBlockSize);
        out[b] = body(engine, begin, end);
    };
    if (exec == Exec::parallel) {
        const auto nb = static_cast<std::ptrdiff_t>(blocks);
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t b = 0; b < nb; ++b) run(static_cast<std::size_t>(b));
    } else {
        for (std::size_t b = 0; b < blocks; ++b) run(b);
    }
    return out;
}

/// Pairwise sum with a fixed tree shape.
template <class T>
T tree_sum(const std::vector<T>& v, std::size_t lo, std::size_t hi) {
    if (hi <= lo) return T{};
    if (hi - lo == 1) return v[lo];
    const std::size_t mid = lo + (hi - lo) / 2;
    return tree_sum(v, lo, mid) + tree_sum(v, mid, hi);
}

template <class T>
T tree_sum(const std::vector<T>& v) {
    return tree_sum(v, 0, v.size());
}

/// Running count, mean and centered second moment; merged with Chan's update.
struct Moments {
    std::size_t count = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void push(double v) {
        ++count;
        const double delta = v - mean;
        mean += delta / static_cast<double>(count);
        m2 += delta * (v - mean);
    }

    friend Moments operator+(const Moments& a, const Moments& b) {
        if (a.count == 0) return b;
        if (b.count == 0) return a;
        const double na = static_cast<double>(a.count), nb = static_cast<double>(b.count);
        const double n = na + nb;
        const double delta = b.mean - a.mean;
        return {a.count + b.count, a.mean + delta * nb / n, a.m2 + b.m2 + delta * delta * na * nb / n};
    }
};

struct McEstimate {
    double mean = 0.0;
    double std_error = 0.0;
};

inline McEstimate to_estimate(const Moments& m) {
    if (m.count == 0) return {};
    const double n = static_cast<double>(m.count);
    const double var = m.count > 1 ? m.m2 / (n - 1.0) : 0.0;
    return {m.mean, std::sqrt(var / n)};
}

/// Maximum of sample(engine) over n draws.
template <class Sample>
double max_over_samples(std::size_t n, const SeedStream& stream, Exec exec, Sample&& sample) {
    auto partial = map_blocks<double>(n, stream, exec, [&](std::mt19937_64& g, std::size_t b, std::size_t e) {
        double m = -HUGE_VAL;
        for (std::size_t i = b; i < e; ++i) m = std::max(m, sample(g));
        return m;
    });
    double m = -HUGE_VAL;
    for (double v : partial) m = std::max(m, v);
    return m;
}

/// Mean and standard error of sample(engine) over n draws.
template <class Sample>
McEstimate mean_over_samples(std::size_t n, const SeedStream& stream, Exec exec, Sample&& sample) {
    auto partial = map_blocks<Moments>(n, stream, exec, [&](std::mt19937_64& g, std::size_t b, std::size_t e) {
        Moments m;
        for (std::size_t i = b; i < e; ++i) m.push(sample(g));
        return m;
    });
    return to_estimate(tree_sum(partial));
}

} // namespace teich
