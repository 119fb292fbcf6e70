#ifndef PAC_RNG_HPP
#define PAC_RNG_HPP

#include <cstdint>
#include <random>

namespace pac {

// All simulation randomness comes from std::mt19937_64. Its output sequence
// is fixed by the standard, so traces are portable. The std:: distribution
// adaptors are implementation-defined, so uniform draws go through the
// helpers below instead.
using Engine = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Seed of stream `index` under master seed `seed`:
//   splitmix64(splitmix64(seed) ^ (index * 0xd1342543de82ef95 + 1))
// Replicates, Galton-Watson samples and test ensembles all use this.
inline std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index) {
    return splitmix64(splitmix64(seed) ^ (index * 0xd1342543de82ef95ULL + 1));
}

inline Engine make_engine(std::uint64_t seed, std::uint64_t index) {
    return Engine(stream_seed(seed, index));
}

// Uniform double in [0,1) with 53 random bits.
inline double uniform01(Engine& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform integer in [0, bound), bound > 0. Lemire's multiply-shift with
// rejection, so the result is exactly uniform.
inline std::uint64_t uniform_below(Engine& rng, std::uint64_t bound) {
    __uint128_t m = static_cast<__uint128_t>(rng()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        while (low < threshold) {
            m = static_cast<__uint128_t>(rng()) * bound;
            low = static_cast<std::uint64_t>(m);
        }
    }
    return static_cast<std::uint64_t>(m >> 64);
}

}  // namespace pac

#endif  // PAC_RNG_HPP
