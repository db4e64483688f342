#pragma once

#include "bowl/experiment.hpp"
#include "bowl/rational.hpp"
#include "bowl/simulator.hpp"
#include "bowl/solver.hpp"

#include <optional>
#include <string>
#include <vector>

namespace bowl {

struct SweepRow {
    std::string instance;
    std::string group_graph;
    std::string group_timedist;
    int group_stations = 0;
    std::string group_workers;
    Rational best_param = 1;
    double balanced_mean = 0.0;
    double best_mean = 0.0;
    double p_value = 1.0;
    bool bowl_observed = false;
    friend bool operator==(const SweepRow &, const SweepRow &) = default;
};

struct GroupAggregate {
    /// "all", or "<partition>=<label>" with partition in graph, timedist, stations, workers.
    std::string group;
    int instances = 0;
    int observed = 0;
    double bowl_fraction = 0.0;
    /// Mean best parameter over observed rows; empty when none was observed.
    std::optional<double> param_mean;
    friend bool operator==(const GroupAggregate &, const GroupAggregate &) = default;
};

/// One simulated grid point, for plotting metric against the parameter.
struct ParameterPoint {
    std::string instance;
    Rational param = 1;
    double mean = 0.0;
    double stddev = 0.0;
    Rational cycle_time = 0;
    friend bool operator==(const ParameterPoint &, const ParameterPoint &) = default;
};

struct SweepFailure {
    std::string instance;
    std::string message;
    friend bool operator==(const SweepFailure &, const SweepFailure &) = default;
};

struct SweepReport {
    UnbalanceMode mode = UnbalanceMode::Mean;
    ProblemKind problem = ProblemKind::Salbp;
    /// Sorted by instance id.
    std::vector<SweepRow> rows;
    std::vector<GroupAggregate> aggregates;
    /// Sorted by instance id, then by decreasing parameter.
    std::vector<ParameterPoint> curves;
    std::vector<SweepFailure> failures;
    friend bool operator==(const SweepReport &, const SweepReport &) = default;
};

/// Solves at every beta (alpha1 = 1), simulates with uniform base_cv and compares each
/// instance's best beta against beta = 1.
SweepReport run_mean_unbalance(const ExperimentSpec &spec);

/// Solves once with beta = 1 and simulates every theta deviation profile on that line.
SweepReport run_deviation_unbalance(const ExperimentSpec &spec);

/// Dispatches on spec.mode.
SweepReport run_sweep(const ExperimentSpec &spec);

/// Grouped totals over the rows; also used to rebuild aggregates after filtering rows.
std::vector<GroupAggregate> aggregate_rows(const std::vector<SweepRow> &rows);

/// Simulation seed of one instance, from the experiment seed and a canonical text of the
/// instance; shared by all of its grid points.
std::uint64_t instance_seed(std::uint64_t spec_seed, const std::string &content_key);

} // namespace bowl
