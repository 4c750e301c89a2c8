#pragma once

#include <cstdint>
#include <random>

namespace facepool {

// Deterministic random source. All sampling goes through hand-written
// transforms over the raw mt19937_64 stream so that generated values are
// identical across platforms and standard-library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform integer in [0, bound) by rejection; bound must be > 0.
    std::uint64_t below(std::uint64_t bound);

    // Uniform integer in [lo, hi] inclusive.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

    // Uniform double in [0, 1) with 53 bits of precision.
    double uniform01();

    // Standard normal via Box-Muller with a cached spare.
    double normal();

    // Gamma(shape, 1) via Marsaglia-Tsang, with the power boost for shape < 1.
    double gamma(double shape);

    // Beta(a, b) as x/(x+y) of two gammas.
    double beta(double a, double b);

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace facepool
