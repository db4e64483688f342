#pragma once

#include "bowl/rational.hpp"

#include <vector>

namespace bowl {

/// Per-station capacity multipliers: station s may carry at most alphas[s] * C.
struct LoadProfile {
    std::vector<Rational> alphas;
    Rational alpha1 = 1;
    Rational beta = 1;

    [[nodiscard]] std::size_t size() const { return alphas.size(); }
};

/// Per-station coefficients of variation sigma/mu.
struct DeviationProfile {
    std::vector<Rational> cvs;
    Rational base_cv = Rational(1, 10);
    Rational theta = 1;

    [[nodiscard]] std::size_t size() const { return cvs.size(); }
    [[nodiscard]] std::vector<double> as_doubles() const;
};

/// alphas[s] = alpha1 * beta^(min(s, n-s+1) - 1) for 1-indexed s: symmetric, geometric
/// toward the centre. Throws InputError unless n >= 1, alpha1 > 0 and 0 < beta <= 1.
LoadProfile load_profile(int num_stations, const Rational &alpha1, const Rational &beta);

/// Same shape as load_profile, applied to coefficients of variation with base_cv at the ends.
DeviationProfile deviation_profile(int num_stations, const Rational &base_cv, const Rational &theta);

/// All-ones profile; the unmodified balancing objective.
LoadProfile balanced_profile(int num_stations);

} // namespace bowl
