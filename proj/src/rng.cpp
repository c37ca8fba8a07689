#include "atstop/rng.hpp"

namespace atstop {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

Xoshiro256pp::Xoshiro256pp(std::uint64_t seed) noexcept {
    std::uint64_t s = seed;
    for (auto& word : state_) {
        s = splitmix64(s);
        word = s;
    }
    // all-zero state is the one forbidden state
    if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = 1;
}

Xoshiro256pp make_stream(std::uint64_t seed, std::uint64_t index, std::uint64_t tag) noexcept {
    std::uint64_t h = splitmix64(seed ^ 0x243f6a8885a308d3ULL);
    h = splitmix64(h ^ index);
    h = splitmix64(h ^ (tag * 0x13198a2e03707344ULL));
    return Xoshiro256pp(h);
}

}  // namespace atstop
