#include "wacasim/rng.hpp"

#include <bit>

namespace wacasim {

Seed derive_seed(Seed base, std::initializer_list<std::uint64_t> parts) noexcept {
    std::uint64_t h = mix64(base);
    for (auto p : parts) h = mix64(h ^ mix64(p));
    return h;
}

Seed cell_seed(Seed base, std::uint64_t n, double range, std::uint64_t run) noexcept {
    return derive_seed(base, {n, std::bit_cast<std::uint64_t>(range), run});
}

std::uint64_t Rng::below(std::uint64_t bound) {
    const std::uint64_t limit = bound * (UINT64_MAX / bound);
    std::uint64_t x;
    do {
        x = engine_();
    } while (x >= limit);
    return x % bound;
}

}  // namespace wacasim
