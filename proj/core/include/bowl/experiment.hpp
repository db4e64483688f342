#pragma once

#include "bowl/instance.hpp"
#include "bowl/rational.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace bowl {

enum class ProblemKind { Salbp, Alwabp };
enum class UnbalanceMode { Mean, Deviation };

std::string to_string(ProblemKind kind);   // "salbp", "alwabp"
std::string to_string(UnbalanceMode mode); // "mean-unbalance", "deviation-unbalance"

struct InstanceEntry {
    std::string id;
    std::string path;
    int stations = 0;
    std::string graph;     // BN, CH, MIXED or empty
    std::string timedist;  // bimodal, bottom-peak or empty
    std::string workers;   // low, high or empty (ALWABP)
    /// Preloaded instances skip the file; exactly one matches the experiment's problem kind.
    std::optional<SalbpInstance> salbp;
    std::optional<AlwabpInstance> alwabp;
};

/// The parameter grid searched for both beta and theta unless overridden.
std::vector<Rational> default_parameter_grid();

struct ExperimentSpec {
    std::vector<InstanceEntry> instances;
    ProblemKind problem = ProblemKind::Salbp;
    UnbalanceMode mode = UnbalanceMode::Mean;
    std::vector<Rational> beta_grid = default_parameter_grid();
    std::vector<Rational> theta_grid = default_parameter_grid();
    int replications = 300;
    int production_target = 150;
    int warmup_items = 50;
    Rational base_cv = Rational(1, 10);
    std::uint64_t seed = 1;
    unsigned threads = 0;
    // Output paths; empty means "not written".
    std::string rows_csv;
    std::string aggregates_csv;
    std::string report_json;
    std::string curves_csv;
};

/// Throws InputError naming the first broken field.
void validate(const ExperimentSpec &spec);

/// Flat `key = value` text; lists are comma separated; `#` starts a comment. Relative
/// paths (manifest and outputs) resolve against base_dir.
ExperimentSpec parse_experiment_spec(std::string_view text, const std::filesystem::path &base_dir = {});
ExperimentSpec load_experiment_spec(const std::filesystem::path &path);
std::string write_experiment_spec(const ExperimentSpec &spec, const std::string &manifest_path);

/// Manifest lines: `path,stations[,graph[,timedist[,workers]]]`; an optional header line
/// starting with `path` is skipped.
std::vector<InstanceEntry> parse_manifest(std::string_view text, const std::filesystem::path &base_dir = {});
std::string write_manifest(const std::vector<InstanceEntry> &entries);

} // namespace bowl
