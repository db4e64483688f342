#include "bowl/error.hpp"
#include "bowl/solver.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>

namespace bowl {

namespace {

// Loads and multipliers are held as exact integers: load*scale and alpha = num/den, so
// load/alpha compares by cross-multiplication in 128 bits.
__extension__ typedef __int128 Wide;

struct Fraction {
    Wide num = 0;
    Wide den = 1;
};

bool less(const Fraction &a, const Fraction &b) { return a.num * b.den < b.num * a.den; }

struct Enumeration {
    std::vector<int> order;                   // task ids in topological order
    std::vector<std::vector<int>> preds;      // positions in `order`
    std::vector<std::vector<std::int64_t>> times; // [worker][position], -1 incapable
    std::vector<std::int64_t> alpha_num;
    std::vector<std::int64_t> alpha_den;
    BigInt scale = 1;

    std::vector<int> workers;     // worker at each station for the current permutation
    std::vector<int> station;     // station per task position
    std::vector<std::int64_t> loads;

    bool have_best = false;
    Fraction best_cycle;
    std::vector<std::int64_t> best_loads;
    std::vector<int> best_station;
    std::vector<int> best_workers;

    void visit(std::size_t pos) {
        if (pos == order.size()) {
            evaluate();
            return;
        }
        int first = 0;
        for (int p : preds[pos]) first = std::max(first, station[static_cast<std::size_t>(p)]);
        for (int s = first; s < static_cast<int>(loads.size()); ++s) {
            const std::int64_t t = times[static_cast<std::size_t>(workers[static_cast<std::size_t>(s)])][pos];
            if (t < 0) continue;
            station[pos] = s;
            loads[static_cast<std::size_t>(s)] += t;
            visit(pos + 1);
            loads[static_cast<std::size_t>(s)] -= t;
        }
    }

    void evaluate() {
        Fraction cycle{0, 1};
        for (std::size_t s = 0; s < loads.size(); ++s) {
            Fraction value{static_cast<Wide>(loads[s]) * alpha_den[s], alpha_num[s]};
            if (less(cycle, value)) cycle = value;
        }
        bool better = !have_best || less(cycle, best_cycle) ||
                      (!less(best_cycle, cycle) && loads < best_loads);
        if (!better) return;
        have_best = true;
        best_cycle = cycle;
        best_loads = loads;
        best_station = station;
        best_workers = workers;
    }
};

BigInt lcm_of_denominators(const std::vector<Rational> &values) {
    BigInt scale = 1;
    for (const auto &v : values) scale = boost::multiprecision::lcm(scale, BigInt(boost::multiprecision::denominator(v)));
    return scale;
}

std::int64_t narrow(const BigInt &v) {
    if (v > BigInt(std::numeric_limits<std::int64_t>::max() >> 20))
        throw GuardError("values too large for the brute-force oracle");
    return v.convert_to<std::int64_t>();
}

void guard(std::size_t tasks, int stations) {
    if (tasks > static_cast<std::size_t>(kOracleMaxTasks) || stations > kOracleMaxStations)
        throw GuardError("brute-force oracle limited to " + std::to_string(kOracleMaxTasks) + " tasks and " +
                         std::to_string(kOracleMaxStations) + " stations");
}

void fill_alphas(Enumeration &e, const LoadProfile &profile, std::size_t stations) {
    if (profile.size() != stations) throw InputError("profile length does not match station count");
    for (const auto &a : profile.alphas) {
        if (a <= 0) throw InputError("profile multipliers must be positive");
        e.alpha_num.push_back(narrow(boost::multiprecision::numerator(a)));
        e.alpha_den.push_back(narrow(boost::multiprecision::denominator(a)));
    }
}

void fill_preds(Enumeration &e, const std::vector<Precedence> &precedence) {
    std::map<int, int> position;
    for (std::size_t i = 0; i < e.order.size(); ++i) position[e.order[i]] = static_cast<int>(i);
    e.preds.assign(e.order.size(), {});
    for (const auto &p : precedence) e.preds[static_cast<std::size_t>(position.at(p.after))].push_back(position.at(p.before));
}

LineConfiguration extract(const Enumeration &e, bool with_workers) {
    if (!e.have_best) throw InputError("no feasible assignment exists");
    LineConfiguration config;
    const std::size_t stations = e.best_loads.size();
    config.station_tasks.assign(stations, {});
    for (std::size_t pos = 0; pos < e.order.size(); ++pos)
        config.station_tasks[static_cast<std::size_t>(e.best_station[pos])].push_back(e.order[pos]);
    for (auto &tasks : config.station_tasks) std::sort(tasks.begin(), tasks.end());
    for (auto load : e.best_loads) config.station_loads.push_back(Rational(load) / Rational(e.scale));
    Rational worst = 0;
    for (std::size_t s = 0; s < stations; ++s) {
        Rational value = Rational(e.best_loads[s]) * e.alpha_den[s] / e.alpha_num[s];
        worst = std::max(worst, value);
    }
    config.cycle_time = worst / Rational(e.scale);
    if (with_workers) {
        std::vector<int> workers;
        for (int w : e.best_workers) workers.push_back(w + 1);
        config.station_worker = std::move(workers);
    }
    return config;
}

void require_valid(const std::vector<std::string> &violations) {
    if (!violations.empty()) throw InputError("invalid instance: " + violations.front());
}

} // namespace

LineConfiguration brute_force_oracle(const SalbpInstance &instance, const LoadProfile &profile) {
    guard(instance.tasks.size(), instance.stations);
    require_valid(validate(instance));

    Enumeration e;
    std::vector<int> ids;
    std::vector<Rational> values;
    std::map<int, Rational> time_of;
    for (const auto &t : instance.tasks) {
        ids.push_back(t.id);
        values.push_back(t.time);
        time_of[t.id] = t.time;
    }
    e.order = *topological_order(ids, instance.precedence);
    e.scale = lcm_of_denominators(values);
    fill_preds(e, instance.precedence);
    fill_alphas(e, profile, static_cast<std::size_t>(instance.stations));

    std::vector<std::int64_t> row;
    for (int id : e.order) row.push_back(narrow(boost::multiprecision::numerator(time_of[id] * Rational(e.scale))));
    e.times.push_back(std::move(row));
    e.workers.assign(static_cast<std::size_t>(instance.stations), 0);
    e.station.assign(e.order.size(), 0);
    e.loads.assign(static_cast<std::size_t>(instance.stations), 0);
    e.visit(0);
    return extract(e, false);
}

LineConfiguration brute_force_oracle(const AlwabpInstance &instance, const LoadProfile &profile) {
    guard(instance.task_ids.size(), instance.stations);
    require_valid(validate(instance));

    Enumeration e;
    std::vector<Rational> values;
    for (const auto &row : instance.times)
        for (const auto &p : row)
            if (p) values.push_back(*p);
    e.order = *topological_order(instance.task_ids, instance.precedence);
    e.scale = lcm_of_denominators(values);
    fill_preds(e, instance.precedence);
    fill_alphas(e, profile, static_cast<std::size_t>(instance.stations));

    std::map<int, std::size_t> column;
    for (std::size_t i = 0; i < instance.task_ids.size(); ++i) column[instance.task_ids[i]] = i;
    for (const auto &worker_times : instance.times) {
        std::vector<std::int64_t> row;
        for (int id : e.order) {
            const auto &p = worker_times[column[id]];
            row.push_back(p ? narrow(boost::multiprecision::numerator(*p * Rational(e.scale))) : -1);
        }
        e.times.push_back(std::move(row));
    }

    std::vector<int> permutation(static_cast<std::size_t>(instance.workers));
    std::iota(permutation.begin(), permutation.end(), 0);
    e.station.assign(e.order.size(), 0);
    e.loads.assign(static_cast<std::size_t>(instance.stations), 0);
    do {
        e.workers = permutation;
        e.visit(0);
    } while (std::next_permutation(permutation.begin(), permutation.end()));
    return extract(e, true);
}

} // namespace bowl
