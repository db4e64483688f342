// One line per acceptance criterion; exit status is the number of failures.

#include "../support/oracles.hpp"
#include "../support/suites.hpp"
#include "../support/temp_dir.hpp"

#include "commands.hpp"

#include <bowl/error.hpp>
#include <bowl/generator.hpp>
#include <bowl/harness.hpp>
#include <bowl/profiles.hpp>
#include <bowl/report.hpp>
#include <bowl/simulator.hpp>
#include <bowl/solver.hpp>
#include <bowl/stats.hpp>
#include <bowl/student_t.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

using bowl::Rational;

namespace {

struct Verdict {
    bool pass;
    std::string detail;
};

std::vector<std::vector<double>> single_task_stations(const std::vector<double> &times) {
    std::vector<std::vector<double>> out;
    for (double t : times) out.push_back({t});
    return out;
}

Verdict profile_fidelity() {
    const auto a = bowl::load_profile(5, Rational(1), Rational(9, 10)).alphas;
    const auto b = bowl::load_profile(5, Rational(9, 10), Rational(8, 10)).alphas;
    const std::vector<Rational> ea{1, Rational(9, 10), Rational(81, 100), Rational(9, 10), 1};
    const std::vector<Rational> eb{Rational(9, 10), Rational(72, 100), Rational(576, 1000), Rational(72, 100),
                                   Rational(9, 10)};
    std::string got;
    for (const auto &x : b) got += bowl::format_rational(x) + " ";
    return {a == ea && b == eb, "second profile = " + got};
}

Verdict solver_oracle() {
    int compared = 0, mismatches = 0;
    for (std::uint64_t seed = 1; compared < 240; ++seed) {
        bowl::GeneratorOptions options;
        options.tasks = 2 + static_cast<int>(seed % 9);
        options.stations = 1 + static_cast<int>((seed / 9) % 3);
        options.seed = seed;
        options.structure = static_cast<bowl::GraphStructure>(seed % 3);
        options.times = static_cast<bowl::TimeDistribution>((seed / 2) % 2);
        const auto salbp = bowl::generate_salbp(options);
        const auto alwabp = bowl::generate_alwabp(
            salbp, seed % 2 ? bowl::WorkerVariance::High : bowl::WorkerVariance::Low, 0.2, seed);
        for (const Rational beta : {Rational(1), Rational(9, 10)}) {
            const auto profile = bowl::load_profile(options.stations, Rational(1), beta);
            ++compared;
            if (bowl::solve_salbp(salbp, profile).cycle_time != bowl::brute_force_oracle(salbp, profile).cycle_time)
                ++mismatches;
            ++compared;
            const auto reference = oracle::exhaustive_alwabp(alwabp, profile);
            if (!reference) {
                try {
                    (void)bowl::solve_alwabp(alwabp, profile);
                    ++mismatches;
                } catch (const bowl::InputError &) {
                }
                continue;
            }
            if (bowl::solve_alwabp(alwabp, profile).cycle_time != bowl::brute_force_oracle(alwabp, profile).cycle_time)
                ++mismatches;
        }
    }
    return {mismatches == 0, std::to_string(compared) + " solves compared, " + std::to_string(mismatches) + " mismatches"};
}

Verdict deterministic_traces() {
    bowl::SimConfig a;
    a.station_means = single_task_stations({2, 3, 2});
    a.station_cvs.assign(3, 0.0);
    a.production_target = 3;
    a.warmup_items = 0;
    bowl::SimConfig b = a;
    b.station_means = single_task_stations({5, 1});
    b.station_cvs.assign(2, 0.0);
    b.production_target = 10;
    const auto ta = bowl::run_replication(a, 0).completion_times;
    const auto tb = bowl::run_replication(b, 0).completion_times;
    const bool pass = ta == std::vector<double>{7, 10, 13} && tb.back() == 51.0;
    std::ostringstream detail;
    detail << "departures " << ta[0] << "," << ta[1] << "," << ta[2] << "; T10 = " << tb.back();
    return {pass, detail.str()};
}

Verdict variability_penalty() {
    bowl::SimConfig config;
    config.station_means = single_task_stations({10, 10, 10, 10, 10});
    config.station_cvs.assign(5, 0.1);
    config.seed = 20240601;
    const auto summary = bowl::run_monte_carlo(config, 300);
    auto det_config = config;
    det_config.station_cvs.assign(5, 0.0);
    const double det = bowl::run_replication(det_config, 0).metric;
    const double se = summary.stddev / std::sqrt(300.0);
    std::ostringstream detail;
    detail << "mean " << summary.mean << " vs deterministic " << det << " + 3*SE " << 3 * se;
    return {summary.mean > det + 3 * se, detail.str()};
}

bowl::ExperimentSpec desk_suite(bowl::UnbalanceMode mode) {
    bowl::ExperimentSpec spec;
    spec.mode = mode;
    spec.instances = testing_support::generated_suite(24, 17);
    spec.seed = 20240601;
    return spec;
}

Verdict deviation_mode() {
    const auto report = bowl::run_deviation_unbalance(desk_suite(bowl::UnbalanceMode::Deviation));
    const auto &all = report.aggregates.front();
    std::ostringstream detail;
    detail << all.instances << " instances, bowl fraction " << all.bowl_fraction;
    if (all.param_mean) detail << ", theta mean " << *all.param_mean;
    return {report.failures.empty() && all.instances >= 20 && all.bowl_fraction >= 0.8, detail.str()};
}

Verdict mean_mode() {
    const auto report = bowl::run_mean_unbalance(desk_suite(bowl::UnbalanceMode::Mean));
    const auto &all = report.aggregates.front();
    std::ostringstream detail;
    detail << all.instances << " instances, bowl fraction " << all.bowl_fraction << ", beta mean ";
    if (all.param_mean) detail << *all.param_mean;
    else detail << "n/a";
    const bool beta_ok = all.param_mean && *all.param_mean >= 0.94 && *all.param_mean < 1.0;
    return {report.failures.empty() && all.instances >= 20 && all.bowl_fraction >= 0.4 && beta_ok, detail.str()};
}

Verdict t_test_accuracy() {
    const std::vector<double> a{1, 2, 3}, b{2, 3, 4};
    const auto r = bowl::welch_t_test(a, b);
    const double p_ref = oracle::t_two_sided_p(-std::sqrt(1.5), 4.0);
    bool ok = std::fabs(r.t_statistic + 1.224745) <= 1e-6 && std::fabs(r.degrees_of_freedom - 4.0) <= 1e-9 &&
              std::fabs(r.p_value - 0.2878) <= 1e-3 && std::fabs(r.p_value - p_ref) <= 1e-9;
    double worst = 0.0;
    int points = 0;
    for (int i = 0; i < 10; ++i)
        for (int j = 0; j < 10; ++j) {
            const double t = -6.0 + 1.3 * i + 0.05 * j;
            const double df = std::pow(10.0, 0.35 * j) * (1.0 + 0.1 * i);
            worst = std::max(worst, std::fabs(bowl::student_t_two_sided_p(t, df) - oracle::t_two_sided_p(t, df)));
            ++points;
        }
    ok = ok && worst <= 1e-9;
    std::ostringstream detail;
    detail << "t " << r.t_statistic << ", df " << r.degrees_of_freedom << ", p " << r.p_value << "; worst |dp| over "
           << points << " grid points " << worst;
    return {ok, detail.str()};
}

Verdict sweep_determinism() {
    testing_support::TempDir dir;
    std::string manifest = "path,stations,graph,timedist\n";
    for (const auto &entry : testing_support::generated_suite(6, 23)) {
        dir.write(entry.id + ".alb", bowl::write_alb(*entry.salbp));
        manifest += entry.id + ".alb,5," + entry.graph + "," + entry.timedist + "\n";
    }
    dir.write("set.csv", manifest);
    const auto spec = "manifest = set.csv\nreplications = 50\nseed = 99\nrows_csv = {}.csv\naggregates_csv = {}-agg.csv\n";
    std::string outputs[2][2];
    for (int run = 0; run < 2; ++run) {
        std::string text = spec;
        const std::string tag = "run" + std::to_string(run);
        for (auto pos = text.find("{}"); pos != std::string::npos; pos = text.find("{}")) text.replace(pos, 2, tag);
        const auto path = dir.write(tag + ".cfg", text).string();
        const char *argv[] = {"bowl", "sweep", path.c_str()};
        std::ostringstream out, err;
        if (bowl::cli::run(3, argv, out, err) != 0) return {false, "sweep failed: " + err.str()};
        outputs[run][0] = dir.read(tag + ".csv");
        outputs[run][1] = dir.read(tag + "-agg.csv");
    }
    const bool same = outputs[0][0] == outputs[1][0] && outputs[0][1] == outputs[1][1];
    return {same && !outputs[0][0].empty(), std::to_string(outputs[0][0].size()) + " bytes of rows CSV, " +
                                                (same ? "identical" : "different")};
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
        {"1 profile fidelity", profile_fidelity},
        {"2 solver-oracle equivalence", solver_oracle},
        {"3 deterministic simulation", deterministic_traces},
        {"4 variability penalty", variability_penalty},
        {"5 bowl phenomenon, deviation mode", deviation_mode},
        {"6 bowl phenomenon, mean mode", mean_mode},
        {"7 statistical kernel accuracy", t_test_accuracy},
        {"8 end-to-end determinism", sweep_determinism},
    };
    int failures = 0;
    for (const auto &[name, check] : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = check();
        } catch (const std::exception &e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s criterion %s: %s (%.1fs)\n", v.pass ? "PASS" : "FAIL", name.c_str(), v.detail.c_str(), secs);
        std::fflush(stdout);
        failures += !v.pass;
    }
    return failures;
}
