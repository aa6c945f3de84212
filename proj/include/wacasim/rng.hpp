#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace wacasim {

using Seed = std::uint64_t;

/// SplitMix64 finalizer. Used to derive independent substreams from a base seed.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Folds `parts` into `base` one word at a time. Order matters.
Seed derive_seed(Seed base, std::initializer_list<std::uint64_t> parts) noexcept;

/// Seed for one sweep cell: hash(base, n, range bits, run).
Seed cell_seed(Seed base, std::uint64_t n, double range, std::uint64_t run) noexcept;

/// Portable generator: std::mt19937_64 (output sequence fixed by the standard)
/// with a hand-rolled 53-bit double conversion, since the standard
/// distributions are implementation-defined.
class Rng {
public:
    explicit Rng(Seed seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform in [0, 1).
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Uniform integer in [0, bound). Rejection sampling, bound > 0.
    std::uint64_t below(std::uint64_t bound);

private:
    std::mt19937_64 engine_;
};

}  // namespace wacasim
