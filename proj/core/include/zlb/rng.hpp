#pragma once

#include <cstdint>
#include <limits>

namespace zlb {

// Counter-based generator: output n is a pure function of (seed, stream, n),
// built from the SplitMix64 finalizer. Satisfies UniformRandomBitGenerator.
class CounterRng {
public:
    using result_type = std::uint64_t;

    explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
        : key_(mix(mix(seed) ^ (stream * 0xd1b54a32d192ed03ULL))) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type at(std::uint64_t counter) const { return mix(key_ + counter * kGamma); }
    result_type operator()() { return at(counter_++); }

    // Uniform on [0, 1) with 53 random bits.
    double uniform_at(std::uint64_t counter) const { return (at(counter) >> 11) * 0x1.0p-53; }
    double uniform() { return uniform_at(counter_++); }

    std::uint64_t counter() const { return counter_; }
    void seek(std::uint64_t counter) { counter_ = counter; }

private:
    static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

    static constexpr std::uint64_t mix(std::uint64_t z) {
        z += kGamma;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace zlb
