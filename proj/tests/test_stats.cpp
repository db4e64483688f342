#include "support/oracles.hpp"

#include <bowl/error.hpp>
#include <bowl/stats.hpp>
#include <bowl/student_t.hpp>

#include <gtest/gtest.h>

#include <cmath>

namespace {

bowl::SimulationSummary summary_of(std::vector<double> metrics) {
    bowl::SimulationSummary s;
    s.replications = static_cast<int>(metrics.size());
    double sum = 0;
    for (double m : metrics) sum += m;
    s.mean = sum / metrics.size();
    double sq = 0;
    for (double m : metrics) sq += (m - s.mean) * (m - s.mean);
    s.stddev = std::sqrt(sq / (metrics.size() - 1));
    s.metrics = std::move(metrics);
    return s;
}

std::vector<double> noisy(double centre, double spread, int n, std::uint64_t seed) {
    bowl::RandomStream stream(seed);
    std::vector<double> out;
    for (int i = 0; i < n; ++i) out.push_back(centre + spread * stream.normal());
    return out;
}

} // namespace

TEST(IncompleteBeta, MatchesHighPrecisionOnGrid) {
    for (double a : {0.5, 1.0, 2.5, 7.0, 40.0, 150.0})
        for (double b : {0.5, 1.0, 3.0, 12.0, 99.5})
            for (double x : {0.0, 1e-6, 0.01, 0.2, 0.5, 0.77, 0.99, 1.0})
                EXPECT_NEAR(bowl::regularized_incomplete_beta(a, b, x), oracle::incomplete_beta(a, b, x), 1e-12)
                    << a << " " << b << " " << x;
}

TEST(StudentT, TwoSidedPOnGrid) {
    int points = 0;
    for (double df : {1.0, 2.0, 3.7, 5.0, 10.0, 29.5, 100.0, 597.0, 1e4, 1e6})
        for (double t : {-12.0, -3.1, -1.96, -0.3, 0.0, 0.7, 1.5, 2.6, 5.0, 40.0}) {
            EXPECT_NEAR(bowl::student_t_two_sided_p(t, df), oracle::t_two_sided_p(t, df), 1e-9) << t << " " << df;
            ++points;
        }
    EXPECT_EQ(points, 100);
}

TEST(StudentT, CdfSymmetry) {
    for (double t : {0.1, 1.0, 2.5})
        EXPECT_NEAR(bowl::student_t_cdf(t, 7.0) + bowl::student_t_cdf(-t, 7.0), 1.0, 1e-14);
    EXPECT_DOUBLE_EQ(bowl::student_t_cdf(0.0, 3.0), 0.5);
}

TEST(WelchTTest, SmallExample) {
    const std::vector<double> a{1, 2, 3}, b{2, 3, 4};
    const auto r = bowl::welch_t_test(a, b);
    EXPECT_NEAR(r.t_statistic, -1.224745, 1e-6);
    EXPECT_NEAR(r.degrees_of_freedom, 4.0, 1e-9);
    EXPECT_NEAR(r.p_value, 0.2878, 1e-3);
    EXPECT_NEAR(r.p_value, oracle::t_two_sided_p(-std::sqrt(1.5), 4.0), 1e-12);
    EXPECT_NEAR(r.p_value_one_sided, r.p_value / 2, 1e-12);
    EXPECT_FALSE(r.significant);
}

TEST(WelchTTest, AgreesWithTextbookFormulas) {
    const auto a = noisy(10, 2, 30, 1), b = noisy(11, 0.5, 45, 2);
    const auto r = bowl::welch_t_test(a, b);
    const auto ref = oracle::welch(a, b);
    EXPECT_NEAR(r.t_statistic, static_cast<double>(ref.t), 1e-10);
    EXPECT_NEAR(r.degrees_of_freedom, static_cast<double>(ref.df), 1e-8);
    EXPECT_NEAR(r.p_value, oracle::t_two_sided_p(static_cast<double>(ref.t), static_cast<double>(ref.df)), 1e-9);
}

TEST(WelchTTest, IdenticalSamples) {
    const std::vector<double> a{3, 1, 4, 1, 5};
    const auto r = bowl::welch_t_test(a, a);
    EXPECT_EQ(r.t_statistic, 0.0);
    EXPECT_EQ(r.p_value, 1.0);
    EXPECT_FALSE(r.significant);
}

TEST(WelchTTest, DegenerateConventions) {
    const std::vector<double> zeros{0, 0}, ones{1, 1};
    EXPECT_EQ(bowl::welch_t_test(zeros, ones).p_value, 0.0);
    EXPECT_TRUE(bowl::welch_t_test(zeros, ones).significant);
    EXPECT_EQ(bowl::welch_t_test(ones, ones).p_value, 1.0);
    EXPECT_THROW(bowl::welch_t_test(std::vector<double>{1}, ones), bowl::InputError);
}

TEST(WelchTTest, SwapAntisymmetry) {
    const auto a = noisy(5, 1, 20, 3), b = noisy(5.5, 1.5, 25, 4);
    const auto ab = bowl::welch_t_test(a, b), ba = bowl::welch_t_test(b, a);
    EXPECT_DOUBLE_EQ(ab.t_statistic, -ba.t_statistic);
    EXPECT_DOUBLE_EQ(ab.p_value, ba.p_value);
    EXPECT_NEAR(ab.p_value_one_sided + ba.p_value_one_sided, 1.0, 1e-12);
}

TEST(WelchTTest, PMonotoneInAbsT) {
    double previous = 1.0;
    for (double t = 0.0; t < 8.0; t += 0.25) {
        const double p = bowl::student_t_two_sided_p(t, 12.3);
        EXPECT_LE(p, previous);
        previous = p;
    }
}

TEST(Compare, AllBowlsWorse) {
    const auto balanced = summary_of(noisy(100, 1, 50, 1));
    std::map<bowl::Rational, bowl::SimulationSummary> bowls{
        {bowl::Rational(99, 100), summary_of(noisy(103, 1, 50, 2))},
        {bowl::Rational(98, 100), summary_of(noisy(105, 1, 50, 3))}};
    EXPECT_FALSE(bowl::compare_configurations(balanced, bowls).bowl_observed);
}

TEST(Compare, FivePercentBetterIsObserved) {
    const auto balanced = summary_of(noisy(100, 1, 300, 5));
    std::map<bowl::Rational, bowl::SimulationSummary> bowls{
        {bowl::Rational(1), balanced},
        {bowl::Rational(97, 100), summary_of(noisy(95, 1, 300, 6))},
        {bowl::Rational(95, 100), summary_of(noisy(99, 1, 300, 7))}};
    const auto r = bowl::compare_configurations(balanced, bowls);
    EXPECT_EQ(r.best_param, bowl::Rational(97, 100));
    EXPECT_TRUE(r.bowl_observed);
    EXPECT_LT(r.test.p_value, 0.05);
    const auto ref = oracle::welch(bowls.at(bowl::Rational(97, 100)).metrics, balanced.metrics);
    EXPECT_NEAR(r.test.p_value, oracle::t_two_sided_p(static_cast<double>(ref.t), static_cast<double>(ref.df)), 1e-9);
}

TEST(Compare, SelfComparisonNeverObserved) {
    const auto balanced = summary_of(noisy(100, 1, 30, 8));
    std::map<bowl::Rational, bowl::SimulationSummary> bowls{{bowl::Rational(1), balanced}};
    const auto r = bowl::compare_configurations(balanced, bowls);
    EXPECT_EQ(r.test.p_value, 1.0);
    EXPECT_FALSE(r.bowl_observed);
}

TEST(Compare, TiesGoToLargerParameter) {
    const auto s = summary_of({1, 2, 3});
    std::map<bowl::Rational, bowl::SimulationSummary> bowls{{bowl::Rational(1), s}, {bowl::Rational(9, 10), s}};
    EXPECT_EQ(bowl::compare_configurations(s, bowls).best_param, bowl::Rational(1));
}

TEST(Compare, ScaleInvariantVerdict) {
    const auto base = noisy(100, 2, 40, 9), better = noisy(98.8, 2, 40, 10);
    auto scaled = [](std::vector<double> v, double k) {
        for (double &x : v) x *= k;
        return v;
    };
    for (double k : {0.001, 1.0, 37.0}) {
        std::map<bowl::Rational, bowl::SimulationSummary> bowls{{bowl::Rational(96, 100), summary_of(scaled(better, k))}};
        const auto r = bowl::compare_configurations(summary_of(scaled(base, k)), bowls);
        const auto ref = bowl::compare_configurations(summary_of(base), {{bowl::Rational(96, 100), summary_of(better)}});
        EXPECT_EQ(r.bowl_observed, ref.bowl_observed);
        EXPECT_NEAR(r.test.t_statistic, ref.test.t_statistic, 1e-9);
    }
}

TEST(Compare, EmptyMapRejected) {
    EXPECT_THROW(bowl::compare_configurations(summary_of({1, 2}), {}), bowl::InputError);
}

TEST(WelchWarmup, FlatSeriesCutsAtOne) {
    std::vector<std::vector<double>> times(3);
    for (auto &row : times)
        for (int k = 1; k <= 40; ++k) row.push_back(4.0 * k);
    const auto curve = bowl::welch_warmup(times);
    EXPECT_EQ(curve.suggested_cutoff, 1);
    EXPECT_EQ(curve.smoothed.size(), 36u);
}

TEST(WelchWarmup, StepSeries) {
    std::vector<std::vector<double>> times(2);
    for (auto &row : times) {
        double t = 0;
        for (int k = 1; k <= 120; ++k) row.push_back(t += (k <= 20 ? 10.0 : 5.0));
    }
    const auto curve = bowl::welch_warmup(times, 5, 0.01);
    EXPECT_GE(curve.suggested_cutoff, 20);
    EXPECT_LE(curve.suggested_cutoff, 25);
    EXPECT_EQ(curve.mean_increments.front(), 10.0);
    EXPECT_EQ(curve.smoothed.back(), 5.0);
}

TEST(WelchWarmup, ShiftInvariant) {
    std::vector<std::vector<double>> times(4);
    bowl::RandomStream stream(99);
    for (auto &row : times) {
        double t = 0;
        for (int k = 1; k <= 80; ++k) row.push_back(t += (k < 15 ? 3.0 : 6.0) + 0.2 * stream.normal());
    }
    auto shifted = times;
    for (auto &row : shifted)
        for (double &x : row) x += 1000.0;
    EXPECT_EQ(bowl::welch_warmup(times).suggested_cutoff,
              bowl::welch_warmup(shifted, 5, 0.01, 1000.0).suggested_cutoff);
}

TEST(WelchWarmup, Errors) {
    std::vector<std::vector<double>> one{{1, 2, 3, 4, 5, 6}};
    EXPECT_THROW(bowl::welch_warmup(one), bowl::InputError);
    std::vector<std::vector<double>> short_rows{{1, 2, 3}, {1, 2, 3}};
    EXPECT_THROW(bowl::welch_warmup(short_rows, 3), bowl::InputError);
    std::vector<std::vector<double>> ragged{{1, 2, 3, 4, 5, 6, 7}, {1, 2, 3, 4, 5, 6}};
    EXPECT_THROW(bowl::welch_warmup(ragged, 2), bowl::InputError);
}

TEST(WelchWarmup, SimulatedLineSettlesBeforeFifty) {
    bowl::SimConfig config;
    config.station_means = {{5}, {5}, {5}, {5}, {5}};
    config.station_cvs.assign(5, 0.1);
    config.production_target = 150;
    config.warmup_items = 50;
    config.seed = 5;
    const auto summary = bowl::run_monte_carlo(config, 300, {0, true});
    const auto curve = bowl::welch_warmup(summary.completion_times);
    EXPECT_LE(curve.suggested_cutoff, 50);
}
