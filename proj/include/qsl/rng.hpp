#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace qsl {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// Deterministic per-task stream seed from (master, a, b, c). Independent
// (target, time index, restart) tasks never share a stream.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a,
                                 std::uint64_t b = 0, std::uint64_t c = 0) {
    std::uint64_t s = master;
    std::uint64_t h = splitmix64(s);
    s ^= a + 0x9E3779B97F4A7C15ull;
    h ^= splitmix64(s);
    s ^= b + 0xC2B2AE3D27D4EB4Full;
    h ^= splitmix64(s);
    s ^= c + 0x165667B19E3779F9ull;
    h ^= splitmix64(s);
    return h;
}

// mt19937_64 with a hand-rolled Box-Muller (std::normal_distribution is
// implementation-defined; this keeps streams reproducible per platform
// and independent of libstdc++ internals).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    double uniform() {  // (0, 1]
        return (static_cast<double>(eng_() >> 11) + 1.0) * 0x1.0p-53;
    }

    double normal() {
        const double u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * std::numbers::pi * u2);
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace qsl
