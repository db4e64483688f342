#pragma once

#include "bowl/instance.hpp"

#include <cstdint>
#include <string>

namespace bowl {

// Small random instance generator for self-tests and demos. It imitates the shape of the
// standard benchmark families (graph structure, task-time distribution) only loosely.

enum class GraphStructure { Bottleneck, Chain, Mixed };
enum class TimeDistribution { Bimodal, BottomPeak };
enum class WorkerVariance { Low, High };

std::string to_string(GraphStructure structure);  // "BN", "CH", "MIXED"
std::string to_string(TimeDistribution distribution); // "bimodal", "bottom-peak"
std::string to_string(WorkerVariance variance);   // "low", "high"

struct GeneratorOptions {
    int tasks = 20;
    int stations = 5;
    GraphStructure structure = GraphStructure::Mixed;
    TimeDistribution times = TimeDistribution::Bimodal;
    std::uint64_t seed = 1;
};

SalbpInstance generate_salbp(const GeneratorOptions &options);

/// Worker-dependent times derived from a SALBP instance: low variance draws p in [1, t],
/// high variance in [1, 3t]; each (worker, task) pair is incapable with the given
/// probability, but every task keeps at least one capable worker.
AlwabpInstance generate_alwabp(const SalbpInstance &base, WorkerVariance variance,
                               double incapable_probability, std::uint64_t seed);

} // namespace bowl
