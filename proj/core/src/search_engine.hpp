#pragma once

#include "bowl/rational.hpp"

#include <cstdint>
#include <vector>

namespace bowl::detail {

inline constexpr std::int64_t kIncapable = -1;
inline constexpr int kMaxSearchTasks = 64;

/// Tasks are indexed 0..n-1 in a topological order, so every predecessor of task i has
/// an index below i. Times are integers on a common scale (kIncapable marks exclusion).
struct SearchProblem {
    std::vector<std::uint64_t> pred_mask;
    std::vector<std::vector<std::int64_t>> rows;
    /// false: every station uses rows[0]. true: each station takes a distinct row.
    bool assign_rows = false;
    std::vector<Rational> alphas;

    [[nodiscard]] int tasks() const { return static_cast<int>(pred_mask.size()); }
    [[nodiscard]] int stations() const { return static_cast<int>(alphas.size()); }
};

struct SearchSolution {
    std::vector<std::uint64_t> station_masks;
    std::vector<int> station_rows;
    std::vector<std::int64_t> loads;
};

struct SearchResult {
    /// max_s loads[s] / alphas[s], in scaled time units.
    Rational cycle_time;
    SearchSolution solution;
};

/// Minimises max_s load_s/alpha_s, then the load vector lexicographically.
/// Throws InputError when no assignment exists at any cycle time.
SearchResult minimize_cycle_time(const SearchProblem &problem);

Rational cycle_time_of(const SearchProblem &problem, const std::vector<std::int64_t> &loads);

} // namespace bowl::detail
