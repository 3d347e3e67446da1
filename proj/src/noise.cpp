#include "atomfield/noise.hpp"

#include <cmath>
#include <numbers>

namespace atomfield {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

}  // namespace

double CounterRng::uniform01(std::uint64_t sample, std::uint64_t slot,
                             std::uint64_t draw) const {
    std::uint64_t h = splitmix64(seed);
    h = splitmix64(h ^ (0x1000000000000001ull * sample + 1));
    h = splitmix64(h ^ (0x2000000000000003ull * slot + 2));
    h = splitmix64(h ^ (0x4000000000000005ull * draw + 3));
    // top 53 bits -> (0, 1]
    return (static_cast<double>(h >> 11) + 1.0) * 0x1.0p-53;
}

std::complex<double> CounterRng::complex_normal(std::uint64_t sample,
                                                std::uint64_t slot) const {
    const double u1 = uniform01(sample, slot, 0);
    const double u2 = uniform01(sample, slot, 1);
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double phi = 2.0 * std::numbers::pi * u2;
    // Box-Muller pair scaled so E|z|^2 = 1
    return std::complex<double>(r * std::cos(phi), r * std::sin(phi)) / std::sqrt(2.0);
}

}  // namespace atomfield
