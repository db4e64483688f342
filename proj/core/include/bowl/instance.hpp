#pragma once

#include "bowl/rational.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace bowl {

struct Task {
    int id = 0;
    Rational time;

    friend bool operator==(const Task &, const Task &) = default;
};

/// `before` must be completed before `after` starts.
struct Precedence {
    int before = 0;
    int after = 0;

    friend bool operator==(const Precedence &, const Precedence &) = default;
};

struct SalbpInstance {
    std::vector<Task> tasks;
    std::vector<Precedence> precedence;
    int stations = 1;

    friend bool operator==(const SalbpInstance &, const SalbpInstance &) = default;
};

/// Worker-dependent task times; an empty optional marks an incapable worker.
using WorkerTime = std::optional<Rational>;

struct AlwabpInstance {
    std::vector<int> task_ids;
    std::vector<Precedence> precedence;
    int workers = 1;
    /// times[w][i] for worker w and task task_ids[i].
    std::vector<std::vector<WorkerTime>> times;
    int stations = 1;

    friend bool operator==(const AlwabpInstance &, const AlwabpInstance &) = default;
};

/// Instance-invariant violations; empty means the instance is valid.
[[nodiscard]] std::vector<std::string> validate(const SalbpInstance &instance);
[[nodiscard]] std::vector<std::string> validate(const AlwabpInstance &instance);

/// Kahn order over `ids` (ties broken by position in `ids`); nullopt when the
/// precedence relation has a cycle or references unknown ids.
std::optional<std::vector<int>> topological_order(const std::vector<int> &ids,
                                                  const std::vector<Precedence> &precedence);

// .alb files carry no station count; callers supply it.
SalbpInstance parse_alb(std::istream &in, int stations = 1);
SalbpInstance parse_alb(std::string_view text, int stations = 1);
void write_alb(std::ostream &out, const SalbpInstance &instance);
std::string write_alb(const SalbpInstance &instance);

AlwabpInstance parse_alwabp(std::istream &in);
AlwabpInstance parse_alwabp(std::string_view text);
void write_alwabp(std::ostream &out, const AlwabpInstance &instance);
std::string write_alwabp(const AlwabpInstance &instance);

SalbpInstance load_alb_file(const std::string &path, int stations);
AlwabpInstance load_alwabp_file(const std::string &path);

} // namespace bowl
