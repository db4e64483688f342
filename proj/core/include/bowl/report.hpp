#pragma once

#include "bowl/harness.hpp"
#include "bowl/simulator.hpp"
#include "bowl/solver.hpp"
#include "bowl/stats.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace bowl {

enum class ReportFormat { Csv, Json };

/// Shortest text that parses back to the same double.
std::string format_double(double value);

/// Header: instance,group_graph,group_timedist,group_stations,best_param,balanced_mean,best_mean,p_value,bowl_observed
std::string emit_rows_csv(const SweepReport &report);
/// Header: group,instances,bowl_fraction,param_mean (param_mean blank when undefined).
std::string emit_aggregates_csv(const SweepReport &report);
/// Header: instance,param,mean,stddev,cycle_time
std::string emit_curves_csv(const SweepReport &report);
std::string emit_report_json(const SweepReport &report);
/// Csv gives the per-instance rows table; Json gives everything.
std::string emit_report(const SweepReport &report, ReportFormat format);
/// Inverse of emit_report_json. Throws InputError on malformed documents.
SweepReport parse_report_json(std::string_view text);

/// A solved line as written by `solve` and read by `simulate`/`welch`.
struct ConfigurationDocument {
    LineConfiguration configuration;
    /// Task mean times per station, aligned with configuration.station_tasks.
    std::vector<std::vector<Rational>> task_times;
    friend bool operator==(const ConfigurationDocument &, const ConfigurationDocument &) = default;
};

std::string configuration_to_json(const ConfigurationDocument &document);
/// Needs `stations` plus either `task_times` or, failing that, `loads` (one task per station).
ConfigurationDocument parse_configuration_json(std::string_view text);

std::string summary_to_json(const SimulationSummary &summary);
std::string welch_curve_to_json(const WelchCurve &curve);

} // namespace bowl
