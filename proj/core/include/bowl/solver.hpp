#pragma once

#include "bowl/instance.hpp"
#include "bowl/profiles.hpp"
#include "bowl/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace bowl {

struct LineConfiguration {
    /// Task ids per station, ascending.
    std::vector<std::vector<int>> station_tasks;
    /// 1-based worker id per station; absent for SALBP.
    std::optional<std::vector<int>> station_worker;
    /// max_s station_loads[s] / alphas[s].
    Rational cycle_time;
    std::vector<Rational> station_loads;

    friend bool operator==(const LineConfiguration &, const LineConfiguration &) = default;
};

/// Exact minimum of max_s load_s/alpha_s; ties go to the lexicographically smallest load
/// vector. Throws InputError for invalid inputs, GuardError above 64 tasks.
LineConfiguration solve_salbp(const SalbpInstance &instance, const LoadProfile &profile);

/// Joint worker permutation and task assignment, same objective and tie-break.
/// Throws InputError when capabilities make every assignment infeasible.
LineConfiguration solve_alwabp(const AlwabpInstance &instance, const LoadProfile &profile);

inline constexpr int kOracleMaxTasks = 12;
inline constexpr int kOracleMaxStations = 4;

/// Exhaustive enumeration of every precedence-feasible assignment (and worker permutation).
/// Throws GuardError beyond kOracleMaxTasks tasks or kOracleMaxStations stations.
LineConfiguration brute_force_oracle(const SalbpInstance &instance, const LoadProfile &profile);
LineConfiguration brute_force_oracle(const AlwabpInstance &instance, const LoadProfile &profile);

/// Violated LineConfiguration invariants for the given instance and profile.
std::vector<std::string> check_configuration(const SalbpInstance &instance, const LoadProfile &profile,
                                             const LineConfiguration &configuration);
std::vector<std::string> check_configuration(const AlwabpInstance &instance, const LoadProfile &profile,
                                             const LineConfiguration &configuration);

/// Per-station list of task mean times in the order of station_tasks.
std::vector<std::vector<Rational>> station_task_times(const SalbpInstance &instance,
                                                      const LineConfiguration &configuration);
std::vector<std::vector<Rational>> station_task_times(const AlwabpInstance &instance,
                                                      const LineConfiguration &configuration);

} // namespace bowl
