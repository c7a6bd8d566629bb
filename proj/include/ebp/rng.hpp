#pragma once

#include <cstdint>

namespace ebp {

namespace detail {

// SplitMix64 finalizer (Stafford mix13). Applied twice below for a wider
// safety margin when nearby keys/counters are used.
inline std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
}

} // namespace detail

// Counter-based random stream. Every (seed, replicate, day) triple keys an
// independent stream, and each draw is a pure function of (key, counter), so
// replicates can be simulated in any order on any number of threads and still
// produce identical values. Output is stable across library versions.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed, std::uint64_t replicate = 0,
                        std::uint64_t day = 0) {
        constexpr std::uint64_t golden = 0x9e3779b97f4a7c15ULL;
        std::uint64_t k = detail::mix64(seed + golden);
        k = detail::mix64(k ^ (replicate + golden));
        k = detail::mix64(k ^ (day + golden));
        key_ = k;
    }

    std::uint64_t next_u64() {
        std::uint64_t z = key_ + (++ctr_) * 0x9e3779b97f4a7c15ULL;
        return detail::mix64(detail::mix64(z));
    }

    // Uniform in [0, 1), 53-bit resolution.
    double next_unit() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform in (0, 1), safe as a log() argument.
    double next_open() {
        return (static_cast<double>(next_u64() >> 12) + 0.5) * 0x1.0p-52;
    }

private:
    std::uint64_t key_;
    std::uint64_t ctr_ = 0;
};

} // namespace ebp
