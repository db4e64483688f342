#include "search_engine.hpp"

#include "bowl/error.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <optional>
#include <unordered_map>
#include <unordered_set>

namespace bowl::detail {

namespace {

constexpr std::int64_t kUnbounded = std::numeric_limits<std::int64_t>::max() / 4;

struct StateKey {
    std::uint64_t assigned;
    std::uint64_t tag; // station index (shared row) or used-row mask (assigned rows)

    friend bool operator==(const StateKey &, const StateKey &) = default;
};

struct StateKeyHash {
    std::size_t operator()(const StateKey &k) const noexcept {
        std::uint64_t h = k.assigned * 0x9E3779B97F4A7C15ULL;
        h ^= k.tag + 0x632BE59BD9B4E019ULL + (h << 6) + (h >> 2);
        return static_cast<std::size_t>(h);
    }
};

std::int64_t to_int64(const BigInt &v) {
    if (v > kUnbounded) return kUnbounded;
    if (v < 0) return -1;
    return v.convert_to<std::int64_t>();
}

// Stations k.. stay empty; with distinct rows they take the unused rows in ascending order.
void pad_empty_stations(const SearchProblem &problem, SearchSolution &s, int k, std::uint64_t used_rows) {
    int next_row = 0;
    for (int station = k; station < problem.stations(); ++station) {
        s.station_masks.push_back(0);
        s.loads.push_back(0);
        if (problem.assign_rows) {
            while (used_rows >> next_row & 1ULL) ++next_row;
            used_rows |= 1ULL << next_row;
            s.station_rows.push_back(next_row);
        } else {
            s.station_rows.push_back(0);
        }
    }
}

/// Depth-first feasibility search over stations, one station's task subset at a time.
/// Only maximal station subsets are tried: any feasible line can be rearranged into
/// one whose stations cannot take another available task.
class FeasibilitySearch {
public:
    FeasibilitySearch(const SearchProblem &problem, std::vector<std::int64_t> caps)
        : problem_(problem), caps_(std::move(caps)), n_(problem.tasks()), stations_(problem.stations()) {
        all_ = n_ == 64 ? ~0ULL : ((1ULL << n_) - 1);
        cap_suffix_.assign(static_cast<std::size_t>(stations_) + 1, 0);
        for (int s = stations_ - 1; s >= 0; --s)
            cap_suffix_[s] = std::min(kUnbounded, cap_suffix_[s + 1] + caps_[s]);
        masks_.assign(static_cast<std::size_t>(stations_), 0);
        rows_.assign(static_cast<std::size_t>(stations_), 0);
        loads_.assign(static_cast<std::size_t>(stations_), 0);
    }

    std::optional<SearchSolution> run() {
        found_.reset();
        station(0, 0, 0);
        return found_;
    }

    /// Whether the tasks outside `assigned` fit into stations k.. with the unused rows.
    bool completable(int k, std::uint64_t assigned, std::uint64_t used_rows) {
        const StateKey key = key_of(k, assigned, used_rows);
        if (alive_.count(key)) return true;
        found_.reset();
        station(k, assigned, used_rows);
        if (found_) alive_.insert(key);
        return found_.has_value();
    }

    [[nodiscard]] const std::vector<std::int64_t> &caps() const { return caps_; }
    [[nodiscard]] const std::vector<std::int64_t> &cap_suffix() const { return cap_suffix_; }
    [[nodiscard]] std::uint64_t all() const { return all_; }

    [[nodiscard]] StateKey key_of(int k, std::uint64_t assigned, std::uint64_t used_rows) const {
        return {assigned, problem_.assign_rows ? used_rows : static_cast<std::uint64_t>(k)};
    }

    std::int64_t remaining_lower_bound(std::uint64_t assigned, std::uint64_t used_rows) const {
        std::int64_t total = 0;
        for (int i = 0; i < n_; ++i) {
            if (assigned >> i & 1ULL) continue;
            std::int64_t best = kUnbounded;
            for (std::size_t r = 0; r < problem_.rows.size(); ++r) {
                if (problem_.assign_rows && (used_rows >> r & 1ULL)) continue;
                const std::int64_t t = problem_.rows[r][static_cast<std::size_t>(i)];
                if (t != kIncapable) best = std::min(best, t);
            }
            if (best == kUnbounded) return kUnbounded;
            total += best;
        }
        return total;
    }

private:
    struct Frame {
        int k;
        int row;
        std::uint64_t assigned;
        std::uint64_t used_rows;
        std::vector<int> candidates;
        std::vector<std::int64_t> suffix; // sum of candidate times from position p on
        std::int64_t min_load = 0;
    };

    // Returns true when no feasible completion exists below this state.
    bool station(int k, std::uint64_t assigned, std::uint64_t used_rows) {
        if (assigned == all_) {
            record(k, used_rows);
            return false;
        }
        if (k == stations_) return true;
        if (remaining_lower_bound(assigned, used_rows) > cap_suffix_[k]) return true;
        const StateKey key = key_of(k, assigned, used_rows);
        if (dead_.count(key)) return true;

        const int row_count = problem_.assign_rows ? static_cast<int>(problem_.rows.size()) : 1;
        for (int r = 0; r < row_count && !found_; ++r) {
            if (problem_.assign_rows && (used_rows >> r & 1ULL)) continue;
            Frame frame{k, r, assigned, used_rows, {}, {}, 0};
            collect_candidates(frame);
            enumerate(frame, 0, 0, 0);
        }
        if (found_) return false;
        dead_.insert(key);
        return true;
    }

    void collect_candidates(Frame &f) const {
        const auto &times = problem_.rows[static_cast<std::size_t>(f.row)];
        for (int i = 0; i < n_; ++i)
            if (!(f.assigned >> i & 1ULL) && times[i] != kIncapable) f.candidates.push_back(i);
        f.suffix.assign(f.candidates.size() + 1, 0);
        for (std::size_t p = f.candidates.size(); p-- > 0;)
            f.suffix[p] = f.suffix[p + 1] + times[static_cast<std::size_t>(f.candidates[p])];
        if (!problem_.assign_rows) {
            // Whatever this station leaves behind must fit into the later stations.
            const std::int64_t remaining = remaining_lower_bound(f.assigned, f.used_rows);
            f.min_load = std::max<std::int64_t>(0, remaining - cap_suffix_[f.k + 1]);
        }
    }

    void enumerate(Frame &f, std::size_t pos, std::uint64_t subset, std::int64_t load) {
        if (found_) return;
        if (load + f.suffix[pos] < f.min_load) return;
        const auto &times = problem_.rows[static_cast<std::size_t>(f.row)];
        if (pos == f.candidates.size()) {
            if (!is_maximal(f, subset, load)) return;
            masks_[f.k] = subset;
            rows_[f.k] = f.row;
            loads_[f.k] = load;
            station(f.k + 1, f.assigned | subset, f.used_rows | (1ULL << f.row));
            return;
        }
        const int task = f.candidates[pos];
        const std::int64_t t = times[static_cast<std::size_t>(task)];
        const bool available = (problem_.pred_mask[task] & ~(f.assigned | subset)) == 0;
        if (available && load + t <= caps_[f.k]) enumerate(f, pos + 1, subset | (1ULL << task), load + t);
        enumerate(f, pos + 1, subset, load);
    }

    bool is_maximal(const Frame &f, std::uint64_t subset, std::int64_t load) const {
        const auto &times = problem_.rows[static_cast<std::size_t>(f.row)];
        const std::uint64_t placed = f.assigned | subset;
        for (int task : f.candidates) {
            if (subset >> task & 1ULL) continue;
            if ((problem_.pred_mask[task] & ~placed) != 0) continue;
            if (load + times[static_cast<std::size_t>(task)] <= caps_[f.k]) return false;
        }
        return true;
    }

    void record(int k, std::uint64_t used_rows) {
        SearchSolution s;
        s.station_masks.assign(masks_.begin(), masks_.begin() + k);
        s.station_rows.assign(rows_.begin(), rows_.begin() + k);
        s.loads.assign(loads_.begin(), loads_.begin() + k);
        pad_empty_stations(problem_, s, k, used_rows);
        found_ = std::move(s);
    }

    const SearchProblem &problem_;
    std::vector<std::int64_t> caps_;
    int n_;
    int stations_;
    std::uint64_t all_ = 0;
    std::vector<std::int64_t> cap_suffix_;
    std::vector<std::uint64_t> masks_;
    std::vector<int> rows_;
    std::vector<std::int64_t> loads_;
    std::unordered_set<StateKey, StateKeyHash> dead_;
    std::unordered_set<StateKey, StateKeyHash> alive_;
    std::optional<SearchSolution> found_;
};

/// Lexicographically smallest load vector at fixed capacities. Each station tries its
/// subsets in increasing load order; the first load level with a completable subset is
/// optimal, and equal-load ties are settled by the best completion (memoised per state).
class LexicographicSearch {
public:
    LexicographicSearch(const SearchProblem &problem, std::vector<std::int64_t> caps)
        : problem_(problem), feasibility_(problem, std::move(caps)), n_(problem.tasks()) {}

    std::optional<SearchSolution> run() {
        if (!feasibility_.completable(0, 0, 0)) return std::nullopt;
        return best_from(0, 0, 0);
    }

private:
    struct Choice {
        std::int64_t load;
        int row;
        std::uint64_t subset;
    };

    // Precondition: the state is completable.
    const SearchSolution &best_from(int k, std::uint64_t assigned, std::uint64_t used_rows) {
        const StateKey key = feasibility_.key_of(k, assigned, used_rows);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;

        SearchSolution result;
        if (assigned == feasibility_.all()) {
            pad_empty_stations(problem_, result, k, used_rows);
            return memo_.emplace(key, std::move(result)).first->second;
        }

        auto choices = station_choices(k, assigned, used_rows);
        std::stable_sort(choices.begin(), choices.end(),
                         [](const Choice &a, const Choice &b) { return a.load < b.load; });
        std::optional<SearchSolution> best;
        std::optional<std::int64_t> level;
        for (const auto &c : choices) {
            if (level && c.load > *level) break;
            const std::uint64_t next_assigned = assigned | c.subset;
            const std::uint64_t next_rows = used_rows | (1ULL << c.row);
            if (!feasibility_.completable(k + 1, next_assigned, next_rows)) continue;
            level = c.load;
            const SearchSolution &tail = best_from(k + 1, next_assigned, next_rows);
            if (best && !(tail.loads < std::vector<std::int64_t>(best->loads.begin() + 1, best->loads.end()))) continue;
            SearchSolution candidate;
            candidate.station_masks.push_back(c.subset);
            candidate.station_rows.push_back(c.row);
            candidate.loads.push_back(c.load);
            candidate.station_masks.insert(candidate.station_masks.end(), tail.station_masks.begin(), tail.station_masks.end());
            candidate.station_rows.insert(candidate.station_rows.end(), tail.station_rows.begin(), tail.station_rows.end());
            candidate.loads.insert(candidate.loads.end(), tail.loads.begin(), tail.loads.end());
            best = std::move(candidate);
        }
        return memo_.emplace(key, std::move(*best)).first->second;
    }

    std::vector<Choice> station_choices(int k, std::uint64_t assigned, std::uint64_t used_rows) const {
        std::vector<Choice> out;
        const auto cap = feasibility_.caps()[static_cast<std::size_t>(k)];
        std::int64_t min_load = 0;
        if (!problem_.assign_rows) {
            const auto remaining = feasibility_.remaining_lower_bound(assigned, used_rows);
            min_load = std::max<std::int64_t>(0, remaining - feasibility_.cap_suffix()[static_cast<std::size_t>(k) + 1]);
        }
        const int row_count = problem_.assign_rows ? static_cast<int>(problem_.rows.size()) : 1;
        for (int r = 0; r < row_count; ++r) {
            if (problem_.assign_rows && (used_rows >> r & 1ULL)) continue;
            const auto &times = problem_.rows[static_cast<std::size_t>(r)];
            std::vector<int> candidates;
            for (int i = 0; i < n_; ++i)
                if (!(assigned >> i & 1ULL) && times[static_cast<std::size_t>(i)] != kIncapable) candidates.push_back(i);
            std::vector<std::int64_t> suffix(candidates.size() + 1, 0);
            for (std::size_t p = candidates.size(); p-- > 0;)
                suffix[p] = suffix[p + 1] + times[static_cast<std::size_t>(candidates[p])];

            // Iterative include/exclude enumeration of precedence-closed subsets.
            struct Step {
                std::size_t pos;
                std::uint64_t subset;
                std::int64_t load;
            };
            std::vector<Step> stack{{0, 0, 0}};
            while (!stack.empty()) {
                const Step s = stack.back();
                stack.pop_back();
                if (s.load + suffix[s.pos] < min_load) continue;
                if (s.pos == candidates.size()) {
                    out.push_back({s.load, r, s.subset});
                    continue;
                }
                const int task = candidates[s.pos];
                const std::int64_t t = times[static_cast<std::size_t>(task)];
                stack.push_back({s.pos + 1, s.subset, s.load});
                const bool available = (problem_.pred_mask[static_cast<std::size_t>(task)] & ~(assigned | s.subset)) == 0;
                if (available && s.load + t <= cap) stack.push_back({s.pos + 1, s.subset | (1ULL << task), s.load + t});
            }
        }
        return out;
    }

    const SearchProblem &problem_;
    FeasibilitySearch feasibility_;
    int n_;
    std::unordered_map<StateKey, SearchSolution, StateKeyHash> memo_;
};

std::vector<std::int64_t> caps_at(const SearchProblem &problem, const std::optional<Rational> &cycle) {
    std::vector<std::int64_t> caps;
    caps.reserve(problem.alphas.size());
    for (const auto &alpha : problem.alphas)
        caps.push_back(cycle ? to_int64(floor(alpha * *cycle)) : kUnbounded);
    return caps;
}

/// Smallest cycle time above `cycle` at which some station capacity grows.
Rational next_cycle_time(const SearchProblem &problem, const Rational &cycle) {
    std::optional<Rational> next;
    for (const auto &alpha : problem.alphas) {
        Rational candidate = Rational(floor(alpha * cycle) + 1) / alpha;
        if (!next || candidate < *next) next = candidate;
    }
    return *next;
}

std::optional<SearchSolution> feasible_at(const SearchProblem &problem, const std::optional<Rational> &cycle) {
    FeasibilitySearch search(problem, caps_at(problem, cycle));
    return search.run();
}

} // namespace

Rational cycle_time_of(const SearchProblem &problem, const std::vector<std::int64_t> &loads) {
    Rational worst = 0;
    for (std::size_t s = 0; s < loads.size(); ++s) {
        Rational value = Rational(loads[s]) / problem.alphas[s];
        if (value > worst) worst = value;
    }
    return worst;
}

SearchResult minimize_cycle_time(const SearchProblem &problem) {
    if (problem.tasks() > kMaxSearchTasks)
        throw GuardError("branch-and-bound supports at most 64 tasks");
    if (problem.stations() < 1) throw InputError("at least one station is required");
    if (problem.assign_rows && problem.rows.size() > 63)
        throw GuardError("branch-and-bound supports at most 63 workers");

    auto upper = feasible_at(problem, std::nullopt);
    if (!upper) throw InputError("no feasible assignment exists (worker capabilities conflict with precedence)");
    Rational best_cycle = cycle_time_of(problem, upper->loads);
    SearchSolution best = std::move(*upper);

    // Lower bound: the cheapest possible total work spread over the total capacity.
    std::int64_t total = 0;
    for (int i = 0; i < problem.tasks(); ++i) {
        std::int64_t cheapest = kUnbounded;
        for (const auto &row : problem.rows)
            if (row[static_cast<std::size_t>(i)] != kIncapable) cheapest = std::min(cheapest, row[static_cast<std::size_t>(i)]);
        total += cheapest;
    }
    Rational alpha_sum = 0;
    for (const auto &a : problem.alphas) alpha_sum += a;
    Rational infeasible_below = Rational(total) / alpha_sum;

    if (auto at_bound = feasible_at(problem, infeasible_below)) {
        best_cycle = cycle_time_of(problem, at_bound->loads);
        best = std::move(*at_bound);
    } else {
        // Invariant: nothing with cycle time <= infeasible_below exists; best is feasible.
        for (int probe_count = 0;; ++probe_count) {
            Rational step = next_cycle_time(problem, infeasible_below);
            if (step >= best_cycle) break;
            Rational probe = step;
            if (probe_count >= 3) {
                Rational middle = (infeasible_below + best_cycle) / 2;
                if (middle > probe) probe = middle;
            }
            if (auto found = feasible_at(problem, probe)) {
                best_cycle = cycle_time_of(problem, found->loads);
                best = std::move(*found);
            } else {
                infeasible_below = probe;
            }
        }
    }

    LexicographicSearch refine(problem, caps_at(problem, best_cycle));
    auto refined = refine.run();
    return {best_cycle, std::move(*refined)};
}

} // namespace bowl::detail
