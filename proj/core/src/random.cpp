#include "bowl/random.hpp"

#include <cmath>
#include <numbers>

namespace bowl {

std::uint64_t derive_key(std::initializer_list<std::uint64_t> parts) {
    std::uint64_t h = 0x2545F4914F6CDD1DULL;
    for (auto p : parts) h = SplitMix64::mix(h ^ SplitMix64::mix(p + 0x9E3779B97F4A7C15ULL));
    return h;
}

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t replication, std::uint64_t station, std::uint64_t item)
    : engine_(derive_key({seed, replication, station, item})) {}

double RandomStream::uniform() {
    // (k + 0.5) / 2^53 never hits 0 or 1.
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double RandomStream::normal() {
    if (has_cached_) {
        has_cached_ = false;
        return cached_;
    }
    const double radius = std::sqrt(-2.0 * std::log(uniform()));
    const double angle = 2.0 * std::numbers::pi * uniform();
    cached_ = radius * std::sin(angle);
    has_cached_ = true;
    return radius * std::cos(angle);
}

std::int64_t RandomStream::uniform_int(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<unsigned __int128>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>((static_cast<unsigned __int128>(engine_()) * span) >> 64);
}

} // namespace bowl
