#pragma once

#include <cstdint>
#include <random>

namespace fpproj {

/// SplitMix64 finalizer (Steele, Lea, Flood 2014).
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Counter-based draw: a pure function of (seed, index) with 53 uniform bits.
/// The value k stands for the uniform real k / 2^53 in [0, 1).
///
///   k = splitmix64(splitmix64(seed) ^ splitmix64(index ^ 0xd1b54a32d192ed03)) >> 11
///
/// No state is carried between calls, so the draw for index i does not depend
/// on which other indices were evaluated or in what order.
constexpr std::uint64_t counter_draw53(std::uint64_t seed, std::uint64_t index) noexcept {
    return splitmix64(splitmix64(seed) ^ splitmix64(index ^ 0xd1b54a32d192ed03ULL)) >> 11;
}

inline constexpr std::uint64_t kDraw53Range = std::uint64_t{1} << 53;

/// Sequential generator for set sampling. mt19937_64 output is fully specified
/// by the standard; bounded draws use our own rejection step because
/// std::uniform_int_distribution is implementation-defined.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

    /// Uniform integer in [0, bound), bound > 0.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % bound + 1) % bound;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x > limit);
        return x % bound;
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace fpproj
