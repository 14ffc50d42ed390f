#pragma once

#include "arclab/geometry.hpp"

#include <cstdint>
#include <random>
#include <string_view>

namespace arclab {

/// Name recorded in manifests for the generator below.
inline constexpr std::string_view kRngId = "mt19937_64/splitmix64";

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Deterministic stream keyed by (seed, stream). Uses only raw engine output.
class Rng {
public:
    Rng(std::uint64_t seed, std::uint64_t stream) {
        std::uint64_t s = seed ^ (stream * 0xd1b54a32d192ed03ULL);
        std::seed_seq seq{static_cast<std::uint32_t>(splitmix64(s)), static_cast<std::uint32_t>(splitmix64(s)),
                          static_cast<std::uint32_t>(splitmix64(s)), static_cast<std::uint32_t>(splitmix64(s))};
        engine_.seed(seq);
    }

    std::uint64_t next() { return engine_(); }

    /// Uniform in [0, n) by rejection; n > 0.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % n;
    }

    /// True with probability threshold / 2^64.
    bool below_threshold(std::uint64_t threshold) { return engine_() < threshold; }

private:
    std::mt19937_64 engine_;
};

/// Uniformly random size in [0, q^2], then a uniform subset of that size.
PointSet random_subset(const PlanePtr& plane, Rng& rng);
/// Uniform subset of exactly `size` points.
PointSet random_subset_of_size(const PlanePtr& plane, std::uint32_t size, Rng& rng);

}  // namespace arclab
