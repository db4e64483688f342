#pragma once

#include <bowl/experiment.hpp>
#include <bowl/generator.hpp>

#include <string>

namespace testing_support {

/// Generated 5-station SALBP instances (20 to 25 tasks) with rotating group labels.
inline std::vector<bowl::InstanceEntry> generated_suite(int count, std::uint64_t seed, int stations = 5) {
    std::vector<bowl::InstanceEntry> out;
    for (int i = 0; i < count; ++i) {
        bowl::GeneratorOptions options;
        options.tasks = 20 + i % 6;
        options.stations = stations;
        options.structure = static_cast<bowl::GraphStructure>(i % 3);
        options.times = static_cast<bowl::TimeDistribution>((i / 3) % 2);
        options.seed = seed * 1000 + static_cast<std::uint64_t>(i);
        bowl::InstanceEntry entry;
        entry.id = "gen" + std::string(i < 10 ? "0" : "") + std::to_string(i);
        entry.stations = stations;
        entry.graph = bowl::to_string(options.structure);
        entry.timedist = bowl::to_string(options.times);
        entry.salbp = bowl::generate_salbp(options);
        out.push_back(std::move(entry));
    }
    return out;
}

} // namespace testing_support
