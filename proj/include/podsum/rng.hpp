#pragma once

#include <cstdint>

namespace podsum {

/// SplitMix64 finalizer: a bijective 64-bit mixing function.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept
{
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;

/// Seed of an independent stream derived from (seed, index), so that batch i
/// sees the same numbers regardless of which worker runs it.
constexpr std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index) noexcept
{
    return mix64(seed + kGoldenGamma * (index + 1));
}

/// SplitMix64 generator (Steele, Lea and Flood). Satisfies
/// UniformRandomBitGenerator, but the helpers below are preferred because
/// their output is specified here rather than by the standard library.
class SplitMix64 {
public:
    using result_type = std::uint64_t;

    explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return ~result_type{0}; }

    constexpr result_type operator()() noexcept
    {
        state_ += kGoldenGamma;
        return mix64(state_);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    constexpr double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1p-53; }

    /// Uniform double in [lo, hi).
    constexpr double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, n) for n >= 1, by rejection (no modulo bias).
    constexpr std::uint64_t below(std::uint64_t n) noexcept
    {
        const std::uint64_t limit = max() - max() % n;
        std::uint64_t x = (*this)();
        while (x >= limit) {
            x = (*this)();
        }
        return x % n;
    }

private:
    std::uint64_t state_;
};

} // namespace podsum
