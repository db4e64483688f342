#pragma once

#include <cstdint>
#include <initializer_list>

namespace bowl {

/// SplitMix64 (Steele, Lea & Flood 2014). Counter-based: the state advances by a fixed
/// increment, so a stream is fully determined by its starting key.
class SplitMix64 {
public:
    using result_type = std::uint64_t;

    explicit SplitMix64(std::uint64_t state) : state_(state) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type{0}; }

    result_type operator()() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return mix(state_);
    }

    /// The SplitMix64 finaliser.
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t state_;
};

/// Folds a sequence of keys into one well-mixed 64-bit value.
std::uint64_t derive_key(std::initializer_list<std::uint64_t> parts);

/// A stream of variates keyed by (seed, replication, station, item).
class RandomStream {
public:
    RandomStream(std::uint64_t seed, std::uint64_t replication, std::uint64_t station, std::uint64_t item);
    explicit RandomStream(std::uint64_t key) : engine_(key) {}

    /// Uniform on the open interval (0, 1), 53-bit resolution.
    double uniform();
    /// Standard normal via Box-Muller; the second variate of each pair is cached.
    double normal();
    /// Uniform integer in [lo, hi].
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

private:
    SplitMix64 engine_;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

} // namespace bowl
