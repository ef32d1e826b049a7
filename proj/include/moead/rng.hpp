#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace moead {

/// Seeded random source. All randomness in the library flows through this
/// wrapper so that a run is reproducible from a single 64-bit seed. The raw
/// engine output is mapped to doubles/indices by hand instead of through
/// std::uniform_*_distribution, whose results differ between standard
/// library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform double in [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform index in [0, n). n must be positive. Rejection sampling keeps
    /// the draw unbiased.
    std::size_t uniform_index(std::size_t n) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v = engine_();
        while (v >= limit) v = engine_();
        return static_cast<std::size_t>(v % n);
    }

    /// Fisher-Yates shuffle.
    template <typename T>
    void shuffle(std::vector<T>& items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            std::size_t j = uniform_index(i);
            std::swap(items[i - 1], items[j]);
        }
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace moead
