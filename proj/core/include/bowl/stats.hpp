#pragma once

#include "bowl/rational.hpp"
#include "bowl/simulator.hpp"

#include <map>
#include <span>
#include <vector>

namespace bowl {

inline constexpr double kSignificanceLevel = 0.05;

/// Welch's graphical warm-up procedure, automated.
struct WelchCurve {
    int window = 5;
    double epsilon = 0.01;
    /// Cross-replication mean of T_k - T_{k-1}, k = 1..P (T_0 = origin).
    std::vector<double> mean_increments;
    /// Moving averages over `window` consecutive increments; length P - (window - 1).
    std::vector<double> smoothed;
    /// 1-based position from which every smoothed value stays within epsilon
    /// (relative) of the mean of the last quarter of the smoothed series.
    int suggested_cutoff = 1;
};

/// completion_times is R x P. Throws InputError when R < 2, rows are ragged, or window >= P.
WelchCurve welch_warmup(const std::vector<std::vector<double>> &completion_times, int window = 5,
                        double epsilon = 0.01, double origin = 0.0);

struct TTestResult {
    double t_statistic = 0.0;
    /// Welch-Satterthwaite.
    double degrees_of_freedom = 0.0;
    /// Two-sided; drives `significant`.
    double p_value = 1.0;
    /// H1: mean(a) < mean(b).
    double p_value_one_sided = 0.5;
    bool significant = false;
};

/// Unequal-variance two-sample t-test. Both samples need at least two values.
/// With zero variance on both sides: equal means give p = 1, different means give p = 0.
TTestResult welch_t_test(std::span<const double> sample_a, std::span<const double> sample_b,
                         double level = kSignificanceLevel);

struct ComparisonResult {
    Rational best_param;
    double balanced_mean = 0.0;
    double best_mean = 0.0;
    TTestResult test;
    /// Best bowl mean below the balanced mean and the difference significant.
    bool bowl_observed = false;
};

/// Picks the bowl parameter with the smallest mean metric (ties go to the larger
/// parameter) and tests it against the balanced line. Throws InputError on an empty map.
ComparisonResult compare_configurations(const SimulationSummary &balanced,
                                        const std::map<Rational, SimulationSummary> &bowls);

} // namespace bowl
