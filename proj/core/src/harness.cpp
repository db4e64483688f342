#include "bowl/harness.hpp"

#include "bowl/error.hpp"
#include "bowl/profiles.hpp"
#include "bowl/random.hpp"
#include "bowl/stats.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace bowl {

namespace {

struct LoadedInstance {
    std::optional<SalbpInstance> salbp;
    std::optional<AlwabpInstance> alwabp;

    [[nodiscard]] LineConfiguration solve(const LoadProfile &profile) const {
        return salbp ? solve_salbp(*salbp, profile) : solve_alwabp(*alwabp, profile);
    }
    // Canonical text of the instance; equal instances share random numbers.
    [[nodiscard]] std::string content_key() const {
        std::string key;
        if (salbp) {
            key = "salbp " + std::to_string(salbp->stations) + ";";
            for (const auto &t : salbp->tasks) key += std::to_string(t.id) + ":" + format_rational(t.time) + ",";
            key += ";";
            for (const auto &p : salbp->precedence) key += std::to_string(p.before) + "<" + std::to_string(p.after) + ",";
            return key;
        }
        key = "alwabp " + std::to_string(alwabp->stations) + ";";
        for (int id : alwabp->task_ids) key += std::to_string(id) + ",";
        key += ";";
        for (const auto &row : alwabp->times) {
            for (const auto &t : row) key += (t ? format_rational(*t) : std::string("Inf")) + ",";
            key += "|";
        }
        key += ";";
        for (const auto &p : alwabp->precedence) key += std::to_string(p.before) + "<" + std::to_string(p.after) + ",";
        return key;
    }

    [[nodiscard]] std::vector<std::vector<double>> station_means(const LineConfiguration &line) const {
        const auto exact = salbp ? station_task_times(*salbp, line) : station_task_times(*alwabp, line);
        std::vector<std::vector<double>> out;
        for (const auto &station : exact) {
            auto &row = out.emplace_back();
            for (const auto &t : station) row.push_back(to_double(t));
        }
        return out;
    }
};

void reject_invalid(const std::vector<std::string> &violations) {
    if (!violations.empty()) throw InputError(violations.front());
}

LoadedInstance load(const InstanceEntry &entry, ProblemKind problem) {
    LoadedInstance out;
    if (problem == ProblemKind::Salbp) {
        out.salbp = entry.salbp ? *entry.salbp : load_alb_file(entry.path, entry.stations);
        out.salbp->stations = entry.stations;
        reject_invalid(validate(*out.salbp));
    } else {
        out.alwabp = entry.alwabp ? *entry.alwabp : load_alwabp_file(entry.path);
        out.alwabp->stations = entry.stations;
        reject_invalid(validate(*out.alwabp));
    }
    return out;
}

SimulationSummary simulate(const ExperimentSpec &spec, std::vector<std::vector<double>> means,
                           std::vector<double> cvs, std::uint64_t seed) {
    SimConfig config;
    config.station_means = std::move(means);
    config.station_cvs = std::move(cvs);
    config.production_target = spec.production_target;
    config.warmup_items = spec.warmup_items;
    config.seed = seed;
    MonteCarloOptions options;
    options.threads = spec.threads;
    return run_monte_carlo(config, spec.replications, options);
}

SweepRow make_row(const InstanceEntry &entry, const ComparisonResult &comparison) {
    SweepRow row;
    row.instance = entry.id;
    row.group_graph = entry.graph;
    row.group_timedist = entry.timedist;
    row.group_stations = entry.stations;
    row.group_workers = entry.workers;
    row.best_param = comparison.best_param;
    row.balanced_mean = comparison.balanced_mean;
    row.best_mean = comparison.best_mean;
    row.p_value = comparison.test.p_value;
    row.bowl_observed = comparison.bowl_observed;
    return row;
}

// Per-instance body: returns the row and fills curve points for that instance.
using InstanceRunner =
    std::function<SweepRow(const InstanceEntry &, const LoadedInstance &, std::vector<ParameterPoint> &)>;

SweepReport run_each(const ExperimentSpec &spec, UnbalanceMode mode, const InstanceRunner &runner) {
    validate(spec);
    SweepReport report;
    report.mode = mode;
    report.problem = spec.problem;

    std::vector<const InstanceEntry *> order;
    for (const auto &entry : spec.instances) order.push_back(&entry);
    std::sort(order.begin(), order.end(), [](auto *a, auto *b) { return a->id < b->id; });

    for (const auto *entry : order) {
        std::vector<ParameterPoint> points;
        try {
            const auto instance = load(*entry, spec.problem);
            report.rows.push_back(runner(*entry, instance, points));
        } catch (const InputError &e) {
            report.failures.push_back({entry->id, e.what()});
            continue;
        } catch (const GuardError &e) {
            report.failures.push_back({entry->id, e.what()});
            continue;
        }
        std::sort(points.begin(), points.end(), [](const auto &a, const auto &b) { return a.param > b.param; });
        report.curves.insert(report.curves.end(), points.begin(), points.end());
    }
    report.aggregates = aggregate_rows(report.rows);
    return report;
}

using GridMap = std::map<Rational, SimulationSummary>;

ComparisonResult compare(const GridMap &summaries) {
    return compare_configurations(summaries.at(Rational(1)), summaries);
}

} // namespace

std::uint64_t instance_seed(std::uint64_t spec_seed, const std::string &content_key) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char c : content_key) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    return derive_key({spec_seed, hash});
}

SweepReport run_mean_unbalance(const ExperimentSpec &spec) {
    return run_each(spec, UnbalanceMode::Mean, [&](const InstanceEntry &entry, const LoadedInstance &instance,
                                                   std::vector<ParameterPoint> &points) {
        const auto seed = instance_seed(spec.seed, instance.content_key());
        const auto n = static_cast<std::size_t>(entry.stations);
        const std::vector<double> cvs(n, to_double(spec.base_cv));

        // Different betas often give the same line; simulate each distinct line once.
        std::map<std::pair<std::vector<std::vector<int>>, std::optional<std::vector<int>>>, SimulationSummary> cache;
        GridMap summaries;
        for (const auto &beta : spec.beta_grid) {
            const auto line = instance.solve(load_profile(entry.stations, Rational(1), beta));
            auto key = std::make_pair(line.station_tasks, line.station_worker);
            auto it = cache.find(key);
            if (it == cache.end())
                it = cache.emplace(std::move(key), simulate(spec, instance.station_means(line), cvs, seed)).first;
            summaries.emplace(beta, it->second);
            points.push_back({entry.id, beta, it->second.mean, it->second.stddev, line.cycle_time});
        }
        return make_row(entry, compare(summaries));
    });
}

SweepReport run_deviation_unbalance(const ExperimentSpec &spec) {
    return run_each(spec, UnbalanceMode::Deviation, [&](const InstanceEntry &entry, const LoadedInstance &instance,
                                                        std::vector<ParameterPoint> &points) {
        const auto seed = instance_seed(spec.seed, instance.content_key());
        const auto line = instance.solve(balanced_profile(entry.stations));
        const auto means = instance.station_means(line);

        GridMap summaries;
        for (const auto &theta : spec.theta_grid) {
            std::vector<double> cvs(static_cast<std::size_t>(entry.stations), 0.0);
            if (spec.base_cv > 0) cvs = deviation_profile(entry.stations, spec.base_cv, theta).as_doubles();
            auto summary = simulate(spec, means, std::move(cvs), seed);
            points.push_back({entry.id, theta, summary.mean, summary.stddev, line.cycle_time});
            summaries.emplace(theta, std::move(summary));
        }
        return make_row(entry, compare(summaries));
    });
}

SweepReport run_sweep(const ExperimentSpec &spec) {
    return spec.mode == UnbalanceMode::Mean ? run_mean_unbalance(spec) : run_deviation_unbalance(spec);
}

std::vector<GroupAggregate> aggregate_rows(const std::vector<SweepRow> &rows) {
    struct Tally {
        int instances = 0;
        int observed = 0;
        Rational param_sum = 0;
    };
    const auto finish = [](const std::string &group, const Tally &t) {
        GroupAggregate agg;
        agg.group = group;
        agg.instances = t.instances;
        agg.observed = t.observed;
        agg.bowl_fraction = t.instances ? static_cast<double>(t.observed) / t.instances : 0.0;
        if (t.observed) agg.param_mean = to_double(t.param_sum / t.observed);
        return agg;
    };
    const auto add = [](Tally &t, const SweepRow &row) {
        ++t.instances;
        if (row.bowl_observed) {
            ++t.observed;
            t.param_sum += row.best_param;
        }
    };
    const auto label = [](const std::string &s) { return s.empty() ? std::string("NA") : s; };

    std::vector<GroupAggregate> out;
    Tally all;
    for (const auto &row : rows) add(all, row);
    out.push_back(finish("all", all));

    using Extractor = std::function<std::string(const SweepRow &)>;
    const std::vector<std::pair<std::string, Extractor>> partitions = {
        {"graph", [](const SweepRow &r) { return r.group_graph; }},
        {"timedist", [](const SweepRow &r) { return r.group_timedist; }},
        {"workers", [](const SweepRow &r) { return r.group_workers; }},
    };
    for (const auto &[name, extract] : partitions) {
        if (std::none_of(rows.begin(), rows.end(), [&](const auto &r) { return !extract(r).empty(); })) continue;
        std::map<std::string, Tally> tallies;
        for (const auto &row : rows) add(tallies[label(extract(row))], row);
        for (const auto &[key, tally] : tallies) out.push_back(finish(name + "=" + key, tally));
    }
    std::map<int, Tally> by_stations;
    for (const auto &row : rows) add(by_stations[row.group_stations], row);
    for (const auto &[stations, tally] : by_stations)
        out.push_back(finish("stations=" + std::to_string(stations), tally));
    return out;
}

} // namespace bowl
