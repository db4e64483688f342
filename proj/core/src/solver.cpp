#include "bowl/solver.hpp"

#include "bowl/error.hpp"
#include "search_engine.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>

namespace bowl {

namespace {

void require_valid(const std::vector<std::string> &violations) {
    if (violations.empty()) return;
    std::string message = "invalid instance:";
    for (const auto &v : violations) message += " " + v + ";";
    message.pop_back();
    throw InputError(message);
}

void require_profile(std::size_t stations, const LoadProfile &profile) {
    if (profile.size() != stations)
        throw InputError("profile has " + std::to_string(profile.size()) + " stations, instance has " +
                         std::to_string(stations));
    for (const auto &a : profile.alphas)
        if (a <= 0) throw InputError("profile multipliers must be positive");
}

/// lcm of all time denominators, so scaled times are integers.
BigInt common_scale(const std::vector<Rational> &times) {
    BigInt scale = 1;
    for (const auto &t : times) {
        BigInt d = boost::multiprecision::denominator(t);
        scale = scale / boost::multiprecision::gcd(scale, d) * d;
    }
    return scale;
}

std::int64_t scaled(const Rational &time, const BigInt &scale) {
    Rational v = time * Rational(scale);
    BigInt n = boost::multiprecision::numerator(v);
    if (n > BigInt(std::numeric_limits<std::int64_t>::max() / 1024))
        throw GuardError("task times too large for exact search");
    return n.convert_to<std::int64_t>();
}

struct Encoded {
    detail::SearchProblem problem;
    std::vector<int> order; // search index -> task id
    BigInt scale;
};

std::map<int, int> index_of(const std::vector<int> &order) {
    std::map<int, int> index;
    for (std::size_t i = 0; i < order.size(); ++i) index.emplace(order[i], static_cast<int>(i));
    return index;
}

std::vector<std::uint64_t> pred_masks(const std::vector<int> &order, const std::vector<Precedence> &precedence) {
    if (order.size() > static_cast<std::size_t>(detail::kMaxSearchTasks))
        throw GuardError("branch-and-bound supports at most 64 tasks");
    const auto index = index_of(order);
    std::vector<std::uint64_t> masks(order.size(), 0);
    for (const auto &p : precedence)
        masks[static_cast<std::size_t>(index.at(p.after))] |= 1ULL << index.at(p.before);
    return masks;
}

LineConfiguration decode(const Encoded &enc, const detail::SearchResult &result, bool with_workers) {
    LineConfiguration config;
    config.cycle_time = result.cycle_time / Rational(enc.scale);
    for (std::size_t s = 0; s < result.solution.station_masks.size(); ++s) {
        std::vector<int> tasks;
        for (int i = 0; i < enc.problem.tasks(); ++i)
            if (result.solution.station_masks[s] >> i & 1ULL) tasks.push_back(enc.order[static_cast<std::size_t>(i)]);
        std::sort(tasks.begin(), tasks.end());
        config.station_tasks.push_back(std::move(tasks));
        config.station_loads.push_back(Rational(result.solution.loads[s]) / Rational(enc.scale));
    }
    if (with_workers) {
        std::vector<int> workers;
        for (int r : result.solution.station_rows) workers.push_back(r + 1);
        config.station_worker = std::move(workers);
    }
    return config;
}

std::map<int, int> station_of(const LineConfiguration &configuration, std::vector<std::string> &out) {
    std::map<int, int> where;
    for (std::size_t s = 0; s < configuration.station_tasks.size(); ++s)
        for (int id : configuration.station_tasks[s])
            if (!where.emplace(id, static_cast<int>(s)).second)
                out.push_back("task " + std::to_string(id) + " assigned more than once");
    return where;
}

void check_common(const std::vector<int> &ids, const std::vector<Precedence> &precedence,
                  const LoadProfile &profile, const LineConfiguration &configuration,
                  const std::vector<Rational> &recomputed_loads, std::vector<std::string> &out) {
    const auto where = station_of(configuration, out);
    std::set<int> known(ids.begin(), ids.end());
    for (int id : ids)
        if (!where.count(id)) out.push_back("task " + std::to_string(id) + " not assigned");
    for (const auto &[id, s] : where)
        if (!known.count(id)) out.push_back("unknown task " + std::to_string(id) + " assigned");
    for (const auto &p : precedence) {
        auto a = where.find(p.before);
        auto b = where.find(p.after);
        if (a != where.end() && b != where.end() && a->second > b->second)
            out.push_back("precedence violated: " + std::to_string(p.before) + " after " + std::to_string(p.after));
    }
    if (configuration.station_loads != recomputed_loads) out.emplace_back("station loads do not match task times");
    Rational worst = 0;
    for (std::size_t s = 0; s < recomputed_loads.size() && s < profile.size(); ++s) {
        if (recomputed_loads[s] > profile.alphas[s] * configuration.cycle_time)
            out.push_back("capacity exceeded at station " + std::to_string(s + 1));
        worst = std::max(worst, Rational(recomputed_loads[s] / profile.alphas[s]));
    }
    if (worst != configuration.cycle_time) out.emplace_back("cycle time is not max load/alpha");
}

} // namespace

LineConfiguration solve_salbp(const SalbpInstance &instance, const LoadProfile &profile) {
    require_valid(validate(instance));
    require_profile(static_cast<std::size_t>(instance.stations), profile);

    std::vector<int> ids;
    std::vector<Rational> times;
    std::map<int, Rational> time_of;
    for (const auto &t : instance.tasks) {
        ids.push_back(t.id);
        times.push_back(t.time);
        time_of.emplace(t.id, t.time);
    }
    Encoded enc;
    enc.order = *topological_order(ids, instance.precedence);
    enc.scale = common_scale(times);
    enc.problem.pred_mask = pred_masks(enc.order, instance.precedence);
    std::vector<std::int64_t> row;
    for (int id : enc.order) row.push_back(scaled(time_of.at(id), enc.scale));
    enc.problem.rows.push_back(std::move(row));
    enc.problem.assign_rows = false;
    enc.problem.alphas = profile.alphas;

    return decode(enc, detail::minimize_cycle_time(enc.problem), false);
}

LineConfiguration solve_alwabp(const AlwabpInstance &instance, const LoadProfile &profile) {
    require_valid(validate(instance));
    require_profile(static_cast<std::size_t>(instance.stations), profile);

    std::vector<Rational> times;
    for (const auto &row : instance.times)
        for (const auto &p : row)
            if (p) times.push_back(*p);

    Encoded enc;
    enc.order = *topological_order(instance.task_ids, instance.precedence);
    enc.scale = common_scale(times);
    enc.problem.pred_mask = pred_masks(enc.order, instance.precedence);
    std::map<int, std::size_t> column;
    for (std::size_t i = 0; i < instance.task_ids.size(); ++i) column.emplace(instance.task_ids[i], i);
    for (const auto &worker_times : instance.times) {
        std::vector<std::int64_t> row;
        for (int id : enc.order) {
            const auto &p = worker_times[column.at(id)];
            row.push_back(p ? scaled(*p, enc.scale) : detail::kIncapable);
        }
        enc.problem.rows.push_back(std::move(row));
    }
    enc.problem.assign_rows = true;
    enc.problem.alphas = profile.alphas;

    return decode(enc, detail::minimize_cycle_time(enc.problem), true);
}

std::vector<std::vector<Rational>> station_task_times(const SalbpInstance &instance,
                                                      const LineConfiguration &configuration) {
    std::map<int, Rational> time_of;
    for (const auto &t : instance.tasks) time_of.emplace(t.id, t.time);
    std::vector<std::vector<Rational>> out;
    for (const auto &tasks : configuration.station_tasks) {
        std::vector<Rational> station;
        for (int id : tasks) {
            auto it = time_of.find(id);
            if (it == time_of.end()) throw InputError("configuration references unknown task " + std::to_string(id));
            station.push_back(it->second);
        }
        out.push_back(std::move(station));
    }
    return out;
}

std::vector<std::vector<Rational>> station_task_times(const AlwabpInstance &instance,
                                                      const LineConfiguration &configuration) {
    if (!configuration.station_worker || configuration.station_worker->size() != configuration.station_tasks.size())
        throw InputError("ALWABP configuration needs one worker per station");
    std::map<int, std::size_t> column;
    for (std::size_t i = 0; i < instance.task_ids.size(); ++i) column.emplace(instance.task_ids[i], i);
    std::vector<std::vector<Rational>> out;
    for (std::size_t s = 0; s < configuration.station_tasks.size(); ++s) {
        const int worker = (*configuration.station_worker)[s];
        if (worker < 1 || worker > static_cast<int>(instance.times.size()))
            throw InputError("configuration references unknown worker " + std::to_string(worker));
        std::vector<Rational> station;
        for (int id : configuration.station_tasks[s]) {
            auto it = column.find(id);
            if (it == column.end()) throw InputError("configuration references unknown task " + std::to_string(id));
            const auto &p = instance.times[static_cast<std::size_t>(worker - 1)][it->second];
            if (!p)
                throw InputError("worker " + std::to_string(worker) + " cannot perform task " + std::to_string(id));
            station.push_back(*p);
        }
        out.push_back(std::move(station));
    }
    return out;
}

std::vector<std::string> check_configuration(const SalbpInstance &instance, const LoadProfile &profile,
                                             const LineConfiguration &configuration) {
    std::vector<std::string> out;
    if (configuration.station_tasks.size() != static_cast<std::size_t>(instance.stations))
        out.emplace_back("station count mismatch");
    if (configuration.station_worker) out.emplace_back("SALBP configuration carries workers");
    std::vector<int> ids;
    for (const auto &t : instance.tasks) ids.push_back(t.id);
    std::vector<Rational> loads;
    try {
        for (const auto &station : station_task_times(instance, configuration)) {
            Rational load = 0;
            for (const auto &t : station) load += t;
            loads.push_back(load);
        }
    } catch (const InputError &e) {
        out.emplace_back(e.what());
        return out;
    }
    check_common(ids, instance.precedence, profile, configuration, loads, out);
    return out;
}

std::vector<std::string> check_configuration(const AlwabpInstance &instance, const LoadProfile &profile,
                                             const LineConfiguration &configuration) {
    std::vector<std::string> out;
    if (configuration.station_tasks.size() != static_cast<std::size_t>(instance.stations))
        out.emplace_back("station count mismatch");
    if (!configuration.station_worker) {
        out.emplace_back("ALWABP configuration lacks workers");
        return out;
    }
    std::vector<int> sorted = *configuration.station_worker;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t w = 0; w < sorted.size(); ++w)
        if (sorted[w] != static_cast<int>(w + 1) || sorted.size() != static_cast<std::size_t>(instance.workers)) {
            out.emplace_back("worker assignment is not a bijection");
            break;
        }
    std::vector<Rational> loads;
    try {
        for (const auto &station : station_task_times(instance, configuration)) {
            Rational load = 0;
            for (const auto &t : station) load += t;
            loads.push_back(load);
        }
    } catch (const InputError &e) {
        out.emplace_back(e.what());
        return out;
    }
    check_common(instance.task_ids, instance.precedence, profile, configuration, loads, out);
    return out;
}

} // namespace bowl
