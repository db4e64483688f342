#include "bowl/stats.hpp"

#include "bowl/error.hpp"
#include "bowl/student_t.hpp"

#include <cmath>
#include <limits>

namespace bowl {

namespace {

struct Moments {
    double mean = 0.0;
    double variance = 0.0;
};

Moments moments(std::span<const double> xs) {
    double sum = 0.0;
    for (double x : xs) sum += x;
    const double mean = sum / static_cast<double>(xs.size());
    double squares = 0.0;
    for (double x : xs) squares += (x - mean) * (x - mean);
    return {mean, squares / static_cast<double>(xs.size() - 1)};
}

} // namespace

WelchCurve welch_warmup(const std::vector<std::vector<double>> &completion_times, int window, double epsilon,
                        double origin) {
    if (completion_times.size() < 2) throw InputError("Welch's method needs at least two replications");
    if (window < 1) throw InputError("window must be positive");
    if (!(epsilon > 0.0)) throw InputError("epsilon must be positive");
    const std::size_t items = completion_times.front().size();
    for (const auto &row : completion_times)
        if (row.size() != items) throw InputError("replications have different lengths");
    if (static_cast<std::size_t>(window) >= items) throw InputError("window must be smaller than the item count");

    WelchCurve curve;
    curve.window = window;
    curve.epsilon = epsilon;
    curve.mean_increments.assign(items, 0.0);
    for (const auto &row : completion_times) {
        double previous = origin;
        for (std::size_t k = 0; k < items; ++k) {
            curve.mean_increments[k] += row[k] - previous;
            previous = row[k];
        }
    }
    for (double &m : curve.mean_increments) m /= static_cast<double>(completion_times.size());

    const std::size_t w = static_cast<std::size_t>(window);
    const std::size_t length = items - w + 1;
    curve.smoothed.reserve(length);
    for (std::size_t j = 0; j < length; ++j) {
        double sum = 0.0;
        for (std::size_t k = j; k < j + w; ++k) sum += curve.mean_increments[k];
        curve.smoothed.push_back(sum / static_cast<double>(w));
    }

    const std::size_t tail_length = (length + 3) / 4;
    double tail = 0.0;
    for (std::size_t j = length - tail_length; j < length; ++j) tail += curve.smoothed[j];
    tail /= static_cast<double>(tail_length);

    std::size_t cutoff = 0;
    for (std::size_t j = 0; j < length; ++j)
        if (std::fabs(curve.smoothed[j] - tail) > epsilon * std::fabs(tail)) cutoff = j + 1;
    curve.suggested_cutoff = static_cast<int>(cutoff + 1);
    return curve;
}

TTestResult welch_t_test(std::span<const double> sample_a, std::span<const double> sample_b, double level) {
    if (sample_a.size() < 2 || sample_b.size() < 2) throw InputError("t-test needs at least two values per sample");
    const auto a = moments(sample_a);
    const auto b = moments(sample_b);
    const double na = static_cast<double>(sample_a.size());
    const double nb = static_cast<double>(sample_b.size());
    const double va = a.variance / na;
    const double vb = b.variance / nb;

    TTestResult result;
    if (va + vb == 0.0) {
        result.degrees_of_freedom = na + nb - 2.0;
        if (a.mean == b.mean) {
            result.t_statistic = 0.0;
            result.p_value = 1.0;
            result.p_value_one_sided = 0.5;
        } else {
            const double inf = std::numeric_limits<double>::infinity();
            result.t_statistic = a.mean < b.mean ? -inf : inf;
            result.p_value = 0.0;
            result.p_value_one_sided = a.mean < b.mean ? 0.0 : 1.0;
        }
    } else {
        result.t_statistic = (a.mean - b.mean) / std::sqrt(va + vb);
        result.degrees_of_freedom = (va + vb) * (va + vb) / (va * va / (na - 1.0) + vb * vb / (nb - 1.0));
        result.p_value = student_t_two_sided_p(result.t_statistic, result.degrees_of_freedom);
        result.p_value_one_sided = student_t_cdf(result.t_statistic, result.degrees_of_freedom);
    }
    result.significant = result.p_value < level;
    return result;
}

ComparisonResult compare_configurations(const SimulationSummary &balanced,
                                        const std::map<Rational, SimulationSummary> &bowls) {
    if (bowls.empty()) throw InputError("no bowl configurations to compare");
    auto best = bowls.rbegin();
    for (auto it = bowls.rbegin(); it != bowls.rend(); ++it)
        if (it->second.mean < best->second.mean) best = it;

    ComparisonResult result;
    result.best_param = best->first;
    result.balanced_mean = balanced.mean;
    result.best_mean = best->second.mean;
    result.test = welch_t_test(best->second.metrics, balanced.metrics);
    result.bowl_observed = result.best_mean < result.balanced_mean && result.test.significant;
    return result;
}

} // namespace bowl
