#include "bowl/report.hpp"

#include "bowl/error.hpp"

#include <json.hpp>

#include <array>
#include <charconv>
#include <cmath>
#include <sstream>

namespace bowl {

using nlohmann::json;

namespace {

json rational_array(const std::vector<Rational> &values) {
    json out = json::array();
    for (const auto &v : values) out.push_back(to_double(v));
    return out;
}

json rational_strings(const std::vector<Rational> &values) {
    json out = json::array();
    for (const auto &v : values) out.push_back(format_rational(v));
    return out;
}

// Exact value from a JSON number or a rational string.
Rational rational_from(const json &value) {
    if (value.is_string()) return parse_rational(value.get<std::string>());
    if (value.is_number_integer()) return Rational(value.get<long long>());
    if (value.is_number()) {
        const double d = value.get<double>();
        if (!std::isfinite(d)) throw InputError("non-finite number in configuration");
        std::array<char, 64> buf{};
        auto res = std::to_chars(buf.data(), buf.data() + buf.size(), d, std::chars_format::fixed);
        return parse_rational(std::string_view(buf.data(), static_cast<std::size_t>(res.ptr - buf.data())));
    }
    throw InputError("expected a number");
}

json optional_double(const std::optional<double> &value) { return value ? json(*value) : json(nullptr); }

// RFC 4180 quoting, only when needed.
std::string csv_field(const std::string &value) {
    if (value.find_first_of(",\"\r\n") == std::string::npos) return value;
    std::string out = "\"";
    for (char c : value) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

const char *mode_name(UnbalanceMode mode) { return mode == UnbalanceMode::Mean ? "mean-unbalance" : "deviation-unbalance"; }

} // namespace

std::string format_double(double value) {
    std::array<char, 64> buf{};
    auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return {buf.data(), res.ptr};
}

std::string emit_rows_csv(const SweepReport &report) {
    std::string out =
        "instance,group_graph,group_timedist,group_stations,best_param,balanced_mean,best_mean,p_value,bowl_observed\n";
    for (const auto &r : report.rows) {
        out += csv_field(r.instance) + ',' + csv_field(r.group_graph) + ',' + csv_field(r.group_timedist) + ',' + std::to_string(r.group_stations) +
               ',' + format_rational(r.best_param) + ',' + format_double(r.balanced_mean) + ',' +
               format_double(r.best_mean) + ',' + format_double(r.p_value) + ',' +
               (r.bowl_observed ? "true" : "false") + '\n';
    }
    return out;
}

std::string emit_aggregates_csv(const SweepReport &report) {
    std::string out = "group,instances,bowl_fraction,param_mean\n";
    for (const auto &a : report.aggregates) {
        out += csv_field(a.group) + ',' + std::to_string(a.instances) + ',' + format_double(a.bowl_fraction) + ',' +
               (a.param_mean ? format_double(*a.param_mean) : std::string()) + '\n';
    }
    return out;
}

std::string emit_curves_csv(const SweepReport &report) {
    std::string out = "instance,param,mean,stddev,cycle_time\n";
    for (const auto &p : report.curves) {
        out += csv_field(p.instance) + ',' + format_rational(p.param) + ',' + format_double(p.mean) + ',' +
               format_double(p.stddev) + ',' + format_rational(p.cycle_time) + '\n';
    }
    return out;
}

std::string emit_report_json(const SweepReport &report) {
    json doc;
    doc["mode"] = mode_name(report.mode);
    doc["problem"] = to_string(report.problem);
    doc["rows"] = json::array();
    for (const auto &r : report.rows) {
        doc["rows"].push_back({{"instance", r.instance},
                               {"group_graph", r.group_graph},
                               {"group_timedist", r.group_timedist},
                               {"group_stations", r.group_stations},
                               {"group_workers", r.group_workers},
                               {"best_param", format_rational(r.best_param)},
                               {"balanced_mean", r.balanced_mean},
                               {"best_mean", r.best_mean},
                               {"p_value", r.p_value},
                               {"bowl_observed", r.bowl_observed}});
    }
    doc["aggregates"] = json::array();
    for (const auto &a : report.aggregates) {
        doc["aggregates"].push_back({{"group", a.group},
                                     {"instances", a.instances},
                                     {"observed", a.observed},
                                     {"bowl_fraction", a.bowl_fraction},
                                     {"param_mean", optional_double(a.param_mean)}});
    }
    doc["curves"] = json::array();
    for (const auto &p : report.curves) {
        doc["curves"].push_back({{"instance", p.instance},
                                 {"param", format_rational(p.param)},
                                 {"mean", p.mean},
                                 {"stddev", p.stddev},
                                 {"cycle_time", format_rational(p.cycle_time)}});
    }
    doc["failures"] = json::array();
    for (const auto &f : report.failures) doc["failures"].push_back({{"instance", f.instance}, {"message", f.message}});
    return doc.dump(2) + '\n';
}

std::string emit_report(const SweepReport &report, ReportFormat format) {
    return format == ReportFormat::Csv ? emit_rows_csv(report) : emit_report_json(report);
}

SweepReport parse_report_json(std::string_view text) {
    try {
        const auto doc = json::parse(text);
        SweepReport report;
        const auto mode = doc.at("mode").get<std::string>();
        if (mode == "mean-unbalance") report.mode = UnbalanceMode::Mean;
        else if (mode == "deviation-unbalance") report.mode = UnbalanceMode::Deviation;
        else throw InputError("unknown mode '" + mode + "'");
        const auto problem = doc.at("problem").get<std::string>();
        if (problem == "salbp") report.problem = ProblemKind::Salbp;
        else if (problem == "alwabp") report.problem = ProblemKind::Alwabp;
        else throw InputError("unknown problem '" + problem + "'");

        for (const auto &r : doc.at("rows")) {
            SweepRow row;
            row.instance = r.at("instance").get<std::string>();
            row.group_graph = r.at("group_graph").get<std::string>();
            row.group_timedist = r.at("group_timedist").get<std::string>();
            row.group_stations = r.at("group_stations").get<int>();
            row.group_workers = r.value("group_workers", std::string());
            row.best_param = rational_from(r.at("best_param"));
            row.balanced_mean = r.at("balanced_mean").get<double>();
            row.best_mean = r.at("best_mean").get<double>();
            row.p_value = r.at("p_value").get<double>();
            row.bowl_observed = r.at("bowl_observed").get<bool>();
            report.rows.push_back(std::move(row));
        }
        for (const auto &a : doc.at("aggregates")) {
            GroupAggregate agg;
            agg.group = a.at("group").get<std::string>();
            agg.instances = a.at("instances").get<int>();
            agg.observed = a.at("observed").get<int>();
            agg.bowl_fraction = a.at("bowl_fraction").get<double>();
            if (!a.at("param_mean").is_null()) agg.param_mean = a.at("param_mean").get<double>();
            report.aggregates.push_back(std::move(agg));
        }
        for (const auto &p : doc.value("curves", json::array())) {
            report.curves.push_back({p.at("instance").get<std::string>(), rational_from(p.at("param")),
                                     p.at("mean").get<double>(), p.at("stddev").get<double>(),
                                     rational_from(p.at("cycle_time"))});
        }
        for (const auto &f : doc.value("failures", json::array()))
            report.failures.push_back({f.at("instance").get<std::string>(), f.at("message").get<std::string>()});
        return report;
    } catch (const json::exception &e) {
        throw InputError(std::string("malformed report JSON: ") + e.what());
    }
}

std::string configuration_to_json(const ConfigurationDocument &document) {
    const auto &c = document.configuration;
    json doc;
    doc["stations"] = c.station_tasks;
    doc["worker"] = c.station_worker ? json(*c.station_worker) : json(nullptr);
    doc["cycle_time"] = to_double(c.cycle_time);
    doc["loads"] = rational_array(c.station_loads);
    doc["cycle_time_exact"] = format_rational(c.cycle_time);
    doc["loads_exact"] = rational_strings(c.station_loads);
    json times = json::array();
    for (const auto &station : document.task_times) times.push_back(rational_strings(station));
    doc["task_times"] = times;
    return doc.dump(2) + '\n';
}

ConfigurationDocument parse_configuration_json(std::string_view text) {
    try {
        const auto doc = json::parse(text);
        ConfigurationDocument out;
        auto &c = out.configuration;
        c.station_tasks = doc.at("stations").get<std::vector<std::vector<int>>>();
        if (doc.contains("worker") && !doc.at("worker").is_null())
            c.station_worker = doc.at("worker").get<std::vector<int>>();
        c.cycle_time = rational_from(doc.contains("cycle_time_exact") ? doc.at("cycle_time_exact") : doc.at("cycle_time"));
        const auto &loads = doc.contains("loads_exact") ? doc.at("loads_exact") : doc.at("loads");
        for (const auto &l : loads) c.station_loads.push_back(rational_from(l));
        if (c.station_loads.size() != c.station_tasks.size())
            throw InputError("configuration has " + std::to_string(c.station_tasks.size()) + " stations but " +
                             std::to_string(c.station_loads.size()) + " loads");
        if (c.station_worker && c.station_worker->size() != c.station_tasks.size())
            throw InputError("configuration worker list does not match its stations");

        if (doc.contains("task_times")) {
            for (const auto &station : doc.at("task_times")) {
                auto &row = out.task_times.emplace_back();
                for (const auto &t : station) row.push_back(rational_from(t));
            }
            if (out.task_times.size() != c.station_tasks.size())
                throw InputError("task_times does not match the station count");
            for (std::size_t s = 0; s < out.task_times.size(); ++s)
                if (out.task_times[s].size() != c.station_tasks[s].size())
                    throw InputError("task_times does not match the tasks of station " + std::to_string(s + 1));
        } else {
            // Without per-task times each station is simulated as a single task.
            for (const auto &l : c.station_loads)
                out.task_times.push_back(l > 0 ? std::vector<Rational>{l} : std::vector<Rational>{});
        }
        for (const auto &station : out.task_times)
            for (const auto &t : station)
                if (t < 0) throw InputError("negative task time in configuration");
        return out;
    } catch (const json::exception &e) {
        throw InputError(std::string("malformed configuration JSON: ") + e.what());
    }
}

std::string summary_to_json(const SimulationSummary &summary) {
    json doc;
    doc["replications"] = summary.replications;
    doc["production_target"] = summary.production_target;
    doc["warmup_items"] = summary.warmup_items;
    doc["seed"] = summary.seed;
    doc["mean"] = summary.mean;
    doc["stddev"] = summary.stddev;
    doc["standard_error"] = summary.replications > 0 ? summary.stddev / std::sqrt(summary.replications) : 0.0;
    doc["metrics"] = summary.metrics;
    if (!summary.completion_times.empty()) doc["completion_times"] = summary.completion_times;
    return doc.dump(2) + '\n';
}

std::string welch_curve_to_json(const WelchCurve &curve) {
    json doc;
    doc["window"] = curve.window;
    doc["epsilon"] = curve.epsilon;
    doc["suggested_cutoff"] = curve.suggested_cutoff;
    doc["mean_increments"] = curve.mean_increments;
    doc["smoothed"] = curve.smoothed;
    return doc.dump(2) + '\n';
}

} // namespace bowl
