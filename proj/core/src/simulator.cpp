#include "bowl/simulator.hpp"

#include "bowl/error.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

namespace bowl {

const char *to_string(StationState state) {
    switch (state) {
    case StationState::Free: return "FREE";
    case StationState::Busy: return "BUSY";
    case StationState::Waiting: return "WAITING";
    }
    return "?";
}

void validate(const SimConfig &config) {
    if (config.station_means.empty()) throw InputError("simulation needs at least one station");
    if (config.station_cvs.size() != config.station_means.size())
        throw InputError("need one coefficient of variation per station");
    if (config.production_target < 1) throw InputError("production target must be positive");
    if (config.warmup_items < 0 || config.warmup_items >= config.production_target)
        throw InputError("warm-up items must satisfy 0 <= D < P");
    for (const auto &station : config.station_means)
        for (double mu : station)
            if (!(mu >= 0.0) || !std::isfinite(mu)) throw InputError("task means must be finite and non-negative");
    for (double cv : config.station_cvs)
        if (!(cv >= 0.0) || !std::isfinite(cv)) throw InputError("coefficients of variation must be non-negative");
}

double sample_station_time(std::span<const double> task_means, double cv, RandomStream &stream) {
    double total = 0.0;
    for (double mu : task_means) total += std::max(0.0, mu + cv * mu * stream.normal());
    return total;
}

namespace {

class LineRun {
public:
    LineRun(const SimConfig &config, std::uint64_t replication, bool record)
        : config_(config), replication_(replication), record_(record), n_(static_cast<int>(config.stations())),
          state_(config.stations(), StationState::Free), item_(config.stations(), 0),
          finish_(config.stations(), 0.0), start_(config.stations(), 0.0) {
        result_.completion_times.reserve(static_cast<std::size_t>(config.production_target));
    }

    ReplicationResult run() {
        begin(0, ++released_, 0.0);
        const auto target = static_cast<std::size_t>(config_.production_target);
        while (result_.completion_times.size() < target) {
            // Next event: earliest completion; equal instants go to the most downstream station.
            int next = -1;
            for (int s = n_ - 1; s >= 0; --s)
                if (state_[s] == StationState::Busy && (next < 0 || finish_[s] < finish_[next])) next = s;
            complete(next, finish_[next]);
        }
        const auto &t = result_.completion_times;
        const double origin = config_.warmup_items == 0 ? 0.0 : t[static_cast<std::size_t>(config_.warmup_items - 1)];
        result_.metric = t.back() - origin;
        return std::move(result_);
    }

private:
    void set_state(int s, StationState to, double now) {
        if (record_) result_.trace.transitions.push_back({now, s, state_[s], to});
        state_[s] = to;
    }

    void begin(int s, int item, double now) {
        set_state(s, StationState::Busy, now);
        item_[s] = item;
        start_[s] = now;
        RandomStream stream(config_.seed, replication_, static_cast<std::uint64_t>(s), static_cast<std::uint64_t>(item));
        finish_[s] = now + sample_station_time(config_.station_means[s], config_.station_cvs[s], stream);
    }

    void complete(int s, double now) {
        if (s == n_ - 1) {
            result_.completion_times.push_back(now);
            leave(s, now);
            pull(s, now);
        } else if (state_[s + 1] == StationState::Free) {
            hand_over(s, now);
        } else {
            set_state(s, StationState::Waiting, now);
        }
    }

    // Station s passes its finished item to the free station s + 1.
    void hand_over(int s, double now) {
        const int item = item_[s];
        leave(s, now);
        begin(s + 1, item, now);
        pull(s, now);
    }

    void leave(int s, double now) {
        if (record_) result_.trace.visits.push_back({item_[s], s, start_[s], finish_[s], now});
        set_state(s, StationState::Free, now);
    }

    // Station s just became free: refill it from upstream at the same instant.
    void pull(int s, double now) {
        if (s == 0) {
            if (released_ < config_.production_target) begin(0, ++released_, now);
        } else if (state_[s - 1] == StationState::Waiting) {
            hand_over(s - 1, now);
        }
    }

    const SimConfig &config_;
    std::uint64_t replication_;
    bool record_;
    int n_;
    int released_ = 0;
    std::vector<StationState> state_;
    std::vector<int> item_;
    std::vector<double> finish_;
    std::vector<double> start_;
    ReplicationResult result_;
};

} // namespace

ReplicationResult run_replication(const SimConfig &config, std::uint64_t replication_index, bool record_trace) {
    validate(config);
    return LineRun(config, replication_index, record_trace).run();
}

SimulationSummary run_monte_carlo(const SimConfig &config, int replications, const MonteCarloOptions &options) {
    validate(config);
    if (replications < 2) throw InputError("Monte Carlo needs at least two replications");

    SimulationSummary summary;
    summary.replications = replications;
    summary.production_target = config.production_target;
    summary.warmup_items = config.warmup_items;
    summary.seed = config.seed;
    summary.metrics.assign(static_cast<std::size_t>(replications), 0.0);
    if (options.keep_completion_times) summary.completion_times.assign(static_cast<std::size_t>(replications), {});

    auto work = [&](std::size_t r) {
        auto result = LineRun(config, r, false).run();
        summary.metrics[r] = result.metric;
        if (options.keep_completion_times) summary.completion_times[r] = std::move(result.completion_times);
    };

    unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(replications));
    if (threads <= 1) {
        for (std::size_t r = 0; r < static_cast<std::size_t>(replications); ++r) work(r);
    } else {
        std::atomic<std::size_t> next{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back([&] {
                try {
                    for (std::size_t r; (r = next.fetch_add(1)) < static_cast<std::size_t>(replications);) work(r);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    failure = std::current_exception();
                }
            });
        for (auto &th : pool) th.join();
        if (failure) std::rethrow_exception(failure);
    }

    double sum = 0.0;
    for (double m : summary.metrics) sum += m;
    summary.mean = sum / replications;
    double squares = 0.0;
    for (double m : summary.metrics) squares += (m - summary.mean) * (m - summary.mean);
    summary.stddev = std::sqrt(squares / (replications - 1));
    return summary;
}

} // namespace bowl
