#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>

namespace teich {

/// A reproducible random stream. Draws are produced in fixed-size blocks; block b of
/// stream (seed, stream_id) uses its own std::mt19937_64 seeded through std::seed_seq
/// with the six 32-bit halves of (seed, stream_id, b). Both generator and seeding
/// algorithm are fully specified by the C++ standard, so output bits do not depend on
/// the platform, the thread count or the scheduling of blocks.
struct SeedStream {
    std::uint64_t seed = 0;
    std::uint64_t stream_id = 0;

    SeedStream substream(std::uint64_t id) const {
        // distinct ids map to distinct stream ids for any fixed parent
        return {seed, stream_id * 0x9E3779B97F4A7C15ULL + id + 1};
    }
};

inline constexpr std::size_t kRngBlockSize = 4096;
inline constexpr std::string_view kRngIdentity =
    "mt19937_64; seed_seq(seed.lo, seed.hi, stream.lo, stream.hi, block.lo, block.hi); "
    "block=4096; u01=(x>>11+0.5)*2^-53";

inline std::mt19937_64 block_engine(const SeedStream& s, std::uint64_t block) {
    auto lo = [](std::uint64_t v) { return static_cast<std::uint32_t>(v & 0xFFFFFFFFu); };
    auto hi = [](std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); };
    std::seed_seq seq{lo(s.seed), hi(s.seed), lo(s.stream_id), hi(s.stream_id), lo(block), hi(block)};
    return std::mt19937_64(seq);
}

/// Uniform on the open interval (0, 1); a fixed bit recipe instead of
/// std::uniform_real_distribution, whose output is implementation-defined.
inline double uniform_open01(std::mt19937_64& g) {
    return (static_cast<double>(g() >> 11) + 0.5) * 0x1.0p-53;
}

inline double uniform(std::mt19937_64& g, double lo, double hi) {
    return lo + (hi - lo) * uniform_open01(g);
}

} // namespace teich
