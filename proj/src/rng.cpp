#include "cbloch/rng.hpp"

namespace cbloch {

namespace {

constexpr std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

} // namespace

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

Xoshiro256ss::Xoshiro256ss(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& word : s_)
        word = splitmix64(sm);
}

Xoshiro256ss Xoshiro256ss::for_stream(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t mix = index;
    return Xoshiro256ss(seed ^ splitmix64(mix));
}

Xoshiro256ss::result_type Xoshiro256ss::operator()() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double Xoshiro256ss::uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

} // namespace cbloch
