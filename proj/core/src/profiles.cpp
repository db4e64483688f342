#include "bowl/profiles.hpp"

#include "bowl/error.hpp"

#include <algorithm>

namespace bowl {

namespace {

std::vector<Rational> bowl_shape(int n, const Rational &outer, const Rational &ratio) {
    std::vector<Rational> values;
    values.reserve(static_cast<std::size_t>(n));
    for (int s = 1; s <= n; ++s) {
        const int depth = std::min(s, n - s + 1) - 1;
        values.push_back(outer * pow(ratio, static_cast<unsigned>(depth)));
    }
    return values;
}

void check_shape_args(int n, const Rational &outer, const Rational &ratio, const char *outer_name,
                      const char *ratio_name) {
    if (n < 1) throw InputError("number of stations must be at least 1");
    if (outer <= 0) throw InputError(std::string(outer_name) + " must be positive");
    if (ratio <= 0 || ratio > 1)
        throw InputError(std::string(ratio_name) + " must lie in (0, 1], got " + format_rational(ratio));
}

} // namespace

std::vector<double> DeviationProfile::as_doubles() const {
    std::vector<double> out;
    out.reserve(cvs.size());
    for (const auto &c : cvs) out.push_back(to_double(c));
    return out;
}

LoadProfile load_profile(int num_stations, const Rational &alpha1, const Rational &beta) {
    check_shape_args(num_stations, alpha1, beta, "alpha1", "beta");
    return {bowl_shape(num_stations, alpha1, beta), alpha1, beta};
}

DeviationProfile deviation_profile(int num_stations, const Rational &base_cv, const Rational &theta) {
    check_shape_args(num_stations, base_cv, theta, "base_cv", "theta");
    return {bowl_shape(num_stations, base_cv, theta), base_cv, theta};
}

LoadProfile balanced_profile(int num_stations) { return load_profile(num_stations, 1, 1); }

} // namespace bowl
