#pragma once

#include <cstdint>
#include <random>

namespace hcontent {

/// std::mt19937_64 with hand-rolled conversions: the engine's output sequence
/// is fixed by the standard, the <random> distributions are not, and seeded
/// families must be identical across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    /// Uniform integer in [0, n); n > 0. Modulo bias is below 2^-50 here.
    std::uint64_t below(std::uint64_t n) { return engine_() % n; }
    bool coin(double p_true = 0.5) { return uniform() < p_true; }

private:
    std::mt19937_64 engine_;
};

} // namespace hcontent
