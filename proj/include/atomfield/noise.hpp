#pragma once

#include <complex>
#include <cstdint>

namespace atomfield {

// Counter-based Gaussian stream: the value at (seed, sample, slot) never
// depends on evaluation order or thread layout.
struct CounterRng {
    std::uint64_t seed = 0;

    // standard complex normal, E z = 0, E|z|^2 = 1
    std::complex<double> complex_normal(std::uint64_t sample, std::uint64_t slot) const;
    double uniform01(std::uint64_t sample, std::uint64_t slot, std::uint64_t draw) const;
};

}  // namespace atomfield
