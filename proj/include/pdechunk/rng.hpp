#pragma once

#include <cstdint>
#include <random>

namespace pdechunk {

// Reproducible-by-construction randomness: the engine is std::mt19937_64
// (bit-specified by the standard) and all draws map raw engine words to
// values explicitly, so streams are identical across platforms. Substreams
// are derived with the splitmix64 finalizer; generation order therefore
// never affects results.

/// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

/// Child seed for the tagged substream of root.
constexpr std::uint64_t substream(std::uint64_t root, std::uint64_t tag) {
    return mix64(root ^ mix64(tag));
}

inline std::mt19937_64 make_engine(std::uint64_t seed) { return std::mt19937_64(seed); }

/// Uniform double in [0, 1) from the top 53 bits of one engine word.
inline double draw_unit(std::mt19937_64& engine) {
    return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

/// Uniform double in [lo, hi]; a degenerate range yields the constant lo.
inline double draw_uniform(std::mt19937_64& engine, double lo, double hi) {
    return lo + (hi - lo) * draw_unit(engine);
}

/// Uniform integer in [lo, hi].
inline std::uint64_t draw_index(std::mt19937_64& engine, std::uint64_t lo, std::uint64_t hi) {
    const std::uint64_t span = hi - lo + 1;  // hi >= lo; span 0 means the full 2^64 range
    if (span == 0) return engine();
    return lo + engine() % span;
}

}  // namespace pdechunk
