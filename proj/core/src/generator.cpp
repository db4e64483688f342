#include "bowl/generator.hpp"

#include "bowl/error.hpp"
#include "bowl/random.hpp"

#include <algorithm>
#include <set>

namespace bowl {

std::string to_string(GraphStructure structure) {
    switch (structure) {
    case GraphStructure::Bottleneck: return "BN";
    case GraphStructure::Chain: return "CH";
    case GraphStructure::Mixed: return "MIXED";
    }
    return "MIXED";
}

std::string to_string(TimeDistribution distribution) {
    return distribution == TimeDistribution::Bimodal ? "bimodal" : "bottom-peak";
}

std::string to_string(WorkerVariance variance) { return variance == WorkerVariance::Low ? "low" : "high"; }

namespace {

std::int64_t draw_time(TimeDistribution distribution, RandomStream &rng) {
    if (distribution == TimeDistribution::Bimodal)
        return rng.uniform() < 0.5 ? rng.uniform_int(2, 8) : rng.uniform_int(14, 24);
    return rng.uniform() < 0.85 ? rng.uniform_int(1, 9) : rng.uniform_int(10, 25);
}

std::set<std::pair<int, int>> draw_arcs(const GeneratorOptions &options, RandomStream &rng) {
    const int n = options.tasks;
    std::set<std::pair<int, int>> arcs;
    switch (options.structure) {
    case GraphStructure::Chain: {
        const int chains = std::max(2, n / 6);
        std::vector<int> last(static_cast<std::size_t>(chains), 0);
        for (int j = 1; j <= n; ++j) {
            const auto c = static_cast<std::size_t>(rng.uniform_int(0, chains - 1));
            if (last[c]) arcs.emplace(last[c], j);
            last[c] = j;
            if (j > 2 && rng.uniform() < 0.1) arcs.emplace(static_cast<int>(rng.uniform_int(1, j - 1)), j);
        }
        break;
    }
    case GraphStructure::Bottleneck: {
        const int hubs = std::max(1, n / 8);
        std::vector<int> hub_ids;
        for (int h = 1; h <= hubs; ++h) hub_ids.push_back(h * n / (hubs + 1));
        for (int j = 1; j <= n; ++j) {
            for (int hub : hub_ids) {
                if (j < hub && rng.uniform() < 0.35) arcs.emplace(j, hub);
                if (j > hub && rng.uniform() < 0.35) arcs.emplace(hub, j);
            }
        }
        break;
    }
    case GraphStructure::Mixed:
        for (int j = 2; j <= n; ++j) {
            const auto count = rng.uniform_int(0, 2);
            for (std::int64_t k = 0; k < count; ++k) {
                const int lo = std::max(1, j - 8);
                arcs.emplace(static_cast<int>(rng.uniform_int(lo, j - 1)), j);
            }
        }
        break;
    }
    return arcs;
}

} // namespace

SalbpInstance generate_salbp(const GeneratorOptions &options) {
    if (options.tasks < 1 || options.stations < 1) throw InputError("generator needs tasks >= 1 and stations >= 1");
    RandomStream rng(derive_key({options.seed, 0x5A1B9ULL}));
    SalbpInstance instance;
    instance.stations = options.stations;
    for (int i = 1; i <= options.tasks; ++i) instance.tasks.push_back({i, Rational(draw_time(options.times, rng))});
    for (const auto &[a, b] : draw_arcs(options, rng)) instance.precedence.push_back({a, b});
    return instance;
}

AlwabpInstance generate_alwabp(const SalbpInstance &base, WorkerVariance variance, double incapable_probability,
                               std::uint64_t seed) {
    RandomStream rng(derive_key({seed, 0xA1EABULL}));
    AlwabpInstance instance;
    instance.workers = base.stations;
    instance.stations = base.stations;
    instance.precedence = base.precedence;
    for (const auto &t : base.tasks) instance.task_ids.push_back(t.id);
    const std::size_t tasks = base.tasks.size();
    const auto workers = static_cast<std::size_t>(base.stations);
    instance.times.assign(workers, std::vector<WorkerTime>(tasks));
    const std::int64_t factor = variance == WorkerVariance::Low ? 1 : 3;
    for (std::size_t i = 0; i < tasks; ++i) {
        const auto t = std::max<std::int64_t>(1, base.tasks[i].time.convert_to<std::int64_t>());
        for (std::size_t w = 0; w < workers; ++w) {
            if (rng.uniform() < incapable_probability) continue;
            instance.times[w][i] = Rational(rng.uniform_int(1, factor * t));
        }
        bool capable = std::any_of(instance.times.begin(), instance.times.end(),
                                   [i](const auto &row) { return row[i].has_value(); });
        if (!capable) {
            const auto w = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(workers) - 1));
            instance.times[w][i] = Rational(rng.uniform_int(1, factor * t));
        }
    }
    return instance;
}

} // namespace bowl
