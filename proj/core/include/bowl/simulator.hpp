#pragma once

#include "bowl/random.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace bowl {

enum class StationState { Free, Busy, Waiting };

const char *to_string(StationState state);

/// Unpaced serial line with no buffers between stations; task times are Normal(mu, (cv*mu)^2)
/// clamped at zero, drawn per task and summed per station.
struct SimConfig {
    std::vector<std::vector<double>> station_means;
    std::vector<double> station_cvs;
    int production_target = 150;
    int warmup_items = 50;
    std::uint64_t seed = 0;

    [[nodiscard]] std::size_t stations() const { return station_means.size(); }
};

/// Throws InputError when the configuration is unusable.
void validate(const SimConfig &config);

struct StationVisit {
    int item = 0;
    int station = 0;
    double start = 0.0;
    double finish = 0.0;
    double depart = 0.0;
};

struct StateTransition {
    double time = 0.0;
    int station = 0;
    StationState from = StationState::Free;
    StationState to = StationState::Free;
};

struct ReplicationTrace {
    std::vector<StationVisit> visits;
    std::vector<StateTransition> transitions;
};

struct ReplicationResult {
    /// Exit instants T_1..T_P from the last station.
    std::vector<double> completion_times;
    /// T_P - T_D, with T_0 = 0.
    double metric = 0.0;
    ReplicationTrace trace;
};

/// One station visit: the sum of clamped Normal task draws. Empty station -> 0.
double sample_station_time(std::span<const double> task_means, double cv, RandomStream &stream);

ReplicationResult run_replication(const SimConfig &config, std::uint64_t replication_index,
                                  bool record_trace = false);

struct SimulationSummary {
    int replications = 0;
    int production_target = 0;
    int warmup_items = 0;
    std::uint64_t seed = 0;
    /// Ordered by replication index.
    std::vector<double> metrics;
    double mean = 0.0;
    /// Sample standard deviation (n - 1).
    double stddev = 0.0;
    /// R x P exit instants; filled only when requested.
    std::vector<std::vector<double>> completion_times;
};

struct MonteCarloOptions {
    /// 0 picks std::thread::hardware_concurrency().
    unsigned threads = 0;
    bool keep_completion_times = false;
};

/// Replications are independent; results do not depend on thread count or scheduling.
SimulationSummary run_monte_carlo(const SimConfig &config, int replications, const MonteCarloOptions &options = {});

} // namespace bowl
