#ifndef ELECTRON_RNG_HPP
#define ELECTRON_RNG_HPP

#include <cstdint>
#include <random>

namespace electron {

// std::uniform_*_distribution output is implementation-defined; these helpers
// keep seeded runs bit-identical across standard libraries.
using Engine = std::mt19937_64;

inline double uniform01(Engine& rng)
{
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform_real(Engine& rng, double lo, double hi)
{
    return lo + (hi - lo) * uniform01(rng);
}

/// Uniform integer in [0, n). n must be positive.
inline std::uint64_t uniform_index(Engine& rng, std::uint64_t n)
{
    const std::uint64_t limit = Engine::max() - Engine::max() % n;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % n;
}

inline bool bernoulli(Engine& rng, double p)
{
    return uniform01(rng) < p;
}

} // namespace electron

#endif // ELECTRON_RNG_HPP
