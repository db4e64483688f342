#include "bowl/experiment.hpp"

#include "bowl/error.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace bowl {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    while (true) {
        auto pos = s.find(sep);
        out.push_back(trim(s.substr(0, pos)));
        if (pos == std::string_view::npos) break;
        s.remove_prefix(pos + 1);
    }
    return out;
}

template <typename Int>
Int parse_integer(std::string_view value, const std::string &key) {
    Int out{};
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc() || ptr != value.data() + value.size())
        throw InputError("'" + key + "' expects an integer, got '" + std::string(value) + "'");
    return out;
}

std::vector<Rational> parse_grid(std::string_view value) {
    std::vector<Rational> grid;
    for (auto item : split(value, ','))
        if (!item.empty()) grid.push_back(parse_rational(item));
    return grid;
}

std::string resolve(const std::filesystem::path &base, std::string_view value) {
    std::filesystem::path p{std::string(value)};
    if (p.is_relative() && !base.empty()) p = base / p;
    return p.lexically_normal().string();
}

std::string join_grid(const std::vector<Rational> &grid) {
    std::string out;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (i) out += ",";
        out += format_rational(grid[i]);
    }
    return out;
}

void check_grid(const std::vector<Rational> &grid, const char *name) {
    if (grid.empty()) throw InputError(std::string(name) + " must not be empty");
    bool has_one = false;
    for (const auto &g : grid) {
        if (g <= 0 || g > 1) throw InputError(std::string(name) + " values must lie in (0, 1]");
        if (g == 1) has_one = true;
    }
    if (!has_one) throw InputError(std::string(name) + " must contain 1 (the balanced reference)");
    std::set<Rational> unique(grid.begin(), grid.end());
    if (unique.size() != grid.size()) throw InputError(std::string(name) + " contains duplicates");
}

} // namespace

std::string to_string(ProblemKind kind) { return kind == ProblemKind::Salbp ? "salbp" : "alwabp"; }

std::string to_string(UnbalanceMode mode) {
    return mode == UnbalanceMode::Mean ? "mean-unbalance" : "deviation-unbalance";
}

std::vector<Rational> default_parameter_grid() {
    std::vector<Rational> grid;
    for (int k = 100; k >= 94; --k) grid.emplace_back(k, 100);
    return grid;
}

void validate(const ExperimentSpec &spec) {
    check_grid(spec.beta_grid, "beta_grid");
    check_grid(spec.theta_grid, "theta_grid");
    if (spec.replications < 2) throw InputError("replications must be at least 2");
    if (spec.production_target < 1) throw InputError("production_target must be positive");
    if (spec.warmup_items < 0 || spec.warmup_items >= spec.production_target)
        throw InputError("warmup_items must satisfy 0 <= warmup_items < production_target");
    if (spec.base_cv < 0) throw InputError("base_cv must be non-negative");
    std::set<std::string> ids;
    for (const auto &entry : spec.instances) {
        if (entry.stations < 1) throw InputError("instance '" + entry.id + "' needs a positive station count");
        if (!ids.insert(entry.id).second) throw InputError("duplicate instance id '" + entry.id + "'");
    }
}

std::vector<InstanceEntry> parse_manifest(std::string_view text, const std::filesystem::path &base_dir) {
    std::vector<InstanceEntry> entries;
    std::istringstream in{std::string(text)};
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        auto line = trim(raw);
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = trim(line.substr(0, hash));
        if (line.empty()) continue;
        auto fields = split(line, ',');
        if (line_no == 1 && fields.front() == "path") continue;
        if (fields.size() < 2 || fields.size() > 5)
            throw InputError("manifest line " + std::to_string(line_no) + ": expected path,stations[,graph,timedist,workers]");
        InstanceEntry entry;
        entry.path = resolve(base_dir, fields[0]);
        entry.id = std::filesystem::path(std::string(fields[0])).stem().string();
        entry.stations = parse_integer<int>(fields[1], "stations");
        if (fields.size() > 2) entry.graph = std::string(fields[2]);
        if (fields.size() > 3) entry.timedist = std::string(fields[3]);
        if (fields.size() > 4) entry.workers = std::string(fields[4]);
        entries.push_back(std::move(entry));
    }
    return entries;
}

std::string write_manifest(const std::vector<InstanceEntry> &entries) {
    std::string out = "path,stations,graph,timedist,workers\n";
    for (const auto &e : entries)
        out += e.path + "," + std::to_string(e.stations) + "," + e.graph + "," + e.timedist + "," + e.workers + "\n";
    return out;
}

ExperimentSpec parse_experiment_spec(std::string_view text, const std::filesystem::path &base_dir) {
    ExperimentSpec spec;
    std::istringstream in{std::string(text)};
    std::string raw;
    int line_no = 0;
    std::set<std::string> seen;
    while (std::getline(in, raw)) {
        ++line_no;
        auto line = trim(raw);
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = trim(line.substr(0, hash));
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw InputError("config line " + std::to_string(line_no) + ": expected key = value");
        const std::string key{trim(line.substr(0, eq))};
        const auto value = trim(line.substr(eq + 1));
        if (!seen.insert(key).second) throw InputError("config key '" + key + "' given twice");

        if (key == "mode") {
            if (value == "mean-unbalance") spec.mode = UnbalanceMode::Mean;
            else if (value == "deviation-unbalance") spec.mode = UnbalanceMode::Deviation;
            else throw InputError("mode must be mean-unbalance or deviation-unbalance");
        } else if (key == "problem") {
            if (value == "salbp") spec.problem = ProblemKind::Salbp;
            else if (value == "alwabp") spec.problem = ProblemKind::Alwabp;
            else throw InputError("problem must be salbp or alwabp");
        } else if (key == "manifest") {
            const auto path = resolve(base_dir, value);
            std::ifstream manifest(path);
            if (!manifest) throw InputError("cannot open manifest: " + path);
            std::ostringstream buffer;
            buffer << manifest.rdbuf();
            spec.instances = parse_manifest(buffer.str(), std::filesystem::path(path).parent_path());
        } else if (key == "beta_grid") {
            spec.beta_grid = parse_grid(value);
        } else if (key == "theta_grid") {
            spec.theta_grid = parse_grid(value);
        } else if (key == "replications") {
            spec.replications = parse_integer<int>(value, key);
        } else if (key == "production_target") {
            spec.production_target = parse_integer<int>(value, key);
        } else if (key == "warmup_items") {
            spec.warmup_items = parse_integer<int>(value, key);
        } else if (key == "base_cv") {
            spec.base_cv = parse_rational(value);
        } else if (key == "seed") {
            spec.seed = parse_integer<std::uint64_t>(value, key);
        } else if (key == "threads") {
            spec.threads = parse_integer<unsigned>(value, key);
        } else if (key == "rows_csv") {
            spec.rows_csv = resolve(base_dir, value);
        } else if (key == "aggregates_csv") {
            spec.aggregates_csv = resolve(base_dir, value);
        } else if (key == "report_json") {
            spec.report_json = resolve(base_dir, value);
        } else if (key == "curves_csv") {
            spec.curves_csv = resolve(base_dir, value);
        } else {
            throw InputError("unknown config key '" + key + "'");
        }
    }
    validate(spec);
    return spec;
}

ExperimentSpec load_experiment_spec(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open experiment spec: " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_experiment_spec(buffer.str(), path.parent_path());
}

std::string write_experiment_spec(const ExperimentSpec &spec, const std::string &manifest_path) {
    std::ostringstream out;
    out << "mode = " << to_string(spec.mode) << '\n'
        << "problem = " << to_string(spec.problem) << '\n'
        << "manifest = " << manifest_path << '\n'
        << "beta_grid = " << join_grid(spec.beta_grid) << '\n'
        << "theta_grid = " << join_grid(spec.theta_grid) << '\n'
        << "replications = " << spec.replications << '\n'
        << "production_target = " << spec.production_target << '\n'
        << "warmup_items = " << spec.warmup_items << '\n'
        << "base_cv = " << format_rational(spec.base_cv) << '\n'
        << "seed = " << spec.seed << '\n';
    if (spec.threads) out << "threads = " << spec.threads << '\n';
    if (!spec.rows_csv.empty()) out << "rows_csv = " << spec.rows_csv << '\n';
    if (!spec.aggregates_csv.empty()) out << "aggregates_csv = " << spec.aggregates_csv << '\n';
    if (!spec.report_json.empty()) out << "report_json = " << spec.report_json << '\n';
    if (!spec.curves_csv.empty()) out << "curves_csv = " << spec.curves_csv << '\n';
    return out.str();
}

} // namespace bowl
