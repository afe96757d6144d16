#pragma once

#include <cstdint>

namespace exo {

// Execution policy for the data-parallel kernels (grid evaluation, sign
// enumeration, frequency sweeps). Serial is the reference path and is kept
// first-class so tests can assert bit-identical results against Parallel.
enum class Exec { Serial, Parallel };

int hardware_threads();

// splitmix64: counter-based generator used wherever sampling must be
// reproducible independent of thread count and iteration order.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Uniform double in [0, 1) from a counter-based state.
inline double uniform01(std::uint64_t seed, std::uint64_t counter) {
    const std::uint64_t z = splitmix64(seed ^ splitmix64(counter));
    return static_cast<double>(z >> 11) * 0x1.0p-53;
}

} // namespace exo
