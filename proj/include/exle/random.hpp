#pragma once

#include <cstdint>
#include <random>

namespace exle {

/// Uniform doubles from a seeded mt19937_64.  The mapping from engine bits to
/// [lo, hi) is fixed here (not left to std::uniform_real_distribution), so a
/// seed reproduces the same samples on every standard library.
class UniformSampler {
public:
    explicit UniformSampler(std::uint64_t seed) : engine_(seed) {}

    double next() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double next(double lo, double hi) { return lo + (hi - lo) * next(); }

private:
    std::mt19937_64 engine_;
};

}  // namespace exle
