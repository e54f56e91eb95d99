#pragma once

#include <array>
#include <cstdint>

namespace cbloch {

// xoshiro256** (Blackman & Vigna) seeded through splitmix64. Every random
// stream in the project comes from Xoshiro256ss::for_stream(seed, index), so
// a (seed, index) pair pins the sequence on every platform.
class Xoshiro256ss {
public:
    using result_type = std::uint64_t;

    explicit Xoshiro256ss(std::uint64_t seed);

    // Independent stream for realization `index` of a run seeded with `seed`.
    static Xoshiro256ss for_stream(std::uint64_t seed, std::uint64_t index);

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type{0}; }

    result_type operator()();

    // Uniform double on [0, 1) from the top 53 bits.
    double uniform();

private:
    std::array<std::uint64_t, 4> s_{};
};

std::uint64_t splitmix64(std::uint64_t& state);

} // namespace cbloch
