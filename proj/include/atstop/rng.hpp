#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace atstop {

/// xoshiro256++ generator. Satisfies UniformRandomBitGenerator so it can be
/// plugged into the Boost/std distributions.
class Xoshiro256pp {
public:
    using result_type = std::uint64_t;

    explicit Xoshiro256pp(std::uint64_t seed = 0x9e3779b97f4a7c15ULL) noexcept;

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform double in the open interval (0, 1).
    double uniform() noexcept {
        return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
    }

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
        return (x << k) | (x >> (64 - k));
    }

    std::array<std::uint64_t, 4> state_{};
};

/// splitmix64 finalizer; used to decorrelate counter-derived seeds.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Independent stream for (seed, index, tag). Monte Carlo code derives one
/// stream per path from its index, so results do not depend on how paths are
/// distributed across threads.
Xoshiro256pp make_stream(std::uint64_t seed, std::uint64_t index, std::uint64_t tag = 0) noexcept;

/// Stream tags used across the library. Distinct tags give statistically
/// independent streams for the same (seed, index).
namespace stream_tag {
inline constexpr std::uint64_t increments = 1;
inline constexpr std::uint64_t killing = 2;
inline constexpr std::uint64_t law_draw = 3;
inline constexpr std::uint64_t bootstrap = 4;
}  // namespace stream_tag

}  // namespace atstop
