#include "commands.hpp"

#include <bowl/error.hpp>
#include <bowl/experiment.hpp>
#include <bowl/generator.hpp>
#include <bowl/harness.hpp>
#include <bowl/instance.hpp>
#include <bowl/profiles.hpp>
#include <bowl/report.hpp>
#include <bowl/simulator.hpp>
#include <bowl/solver.hpp>
#include <bowl/stats.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <ostream>
#include <sstream>

namespace bowl::cli {

namespace {

std::string read_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::string &path, const std::string &content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write " + path);
    out << content;
    if (!out) throw InputError("write failed: " + path);
}

struct SimulationArgs {
    std::string config_path;
    std::string cv = "0.1";
    int items = 150;
    int warmup = 50;
    int reps = 300;
    std::uint64_t seed = 1;
    unsigned threads = 0;
};

void add_simulation_options(CLI::App &cmd, SimulationArgs &args) {
    cmd.add_option("config", args.config_path, "Line configuration JSON written by `solve`")->required();
    cmd.add_option("--cv", args.cv, "Coefficient of variation for every station")->capture_default_str();
    cmd.add_option("--items", args.items, "Production target P")->capture_default_str();
    cmd.add_option("--warmup", args.warmup, "Warm-up items D")->capture_default_str();
    cmd.add_option("--reps", args.reps, "Replications")->capture_default_str();
    cmd.add_option("--seed", args.seed, "Seed")->capture_default_str();
    cmd.add_option("--threads", args.threads, "Worker threads (0 = all cores)")->capture_default_str();
}

SimConfig make_sim_config(const SimulationArgs &args) {
    const auto document = parse_configuration_json(read_file(args.config_path));
    SimConfig config;
    for (const auto &station : document.task_times) {
        auto &row = config.station_means.emplace_back();
        for (const auto &t : station) row.push_back(to_double(t));
    }
    const auto cv = parse_rational(args.cv);
    if (cv < 0) throw InputError("--cv must be non-negative");
    config.station_cvs.assign(config.station_means.size(), to_double(cv));
    config.production_target = args.items;
    config.warmup_items = args.warmup;
    config.seed = args.seed;
    validate(config);
    if (args.reps < 1) throw InputError("--reps must be positive");
    return config;
}

GraphStructure parse_structure(const std::string &s) {
    if (s == "BN") return GraphStructure::Bottleneck;
    if (s == "CH") return GraphStructure::Chain;
    if (s == "MIXED") return GraphStructure::Mixed;
    throw InputError("--graph must be BN, CH or MIXED");
}

TimeDistribution parse_times(const std::string &s) {
    if (s == "bimodal") return TimeDistribution::Bimodal;
    if (s == "bottom-peak") return TimeDistribution::BottomPeak;
    throw InputError("--times must be bimodal or bottom-peak");
}

} // namespace

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Bowl-shaped assembly line balancing, simulation and sweeps", "bowl"};
    app.require_subcommand(1);

    std::string instance_path;
    int stations = 0;
    std::string beta = "1";
    std::string alpha1 = "1";
    bool alwabp = false;
    auto *solve = app.add_subcommand("solve", "Optimal station assignment under a bowl load profile");
    solve->add_option("instance", instance_path, "Instance file (.alb, or ALWABP matrix with --alwabp)")->required();
    solve->add_option("--stations", stations, "Number of stations")->required();
    solve->add_option("--beta", beta, "Profile ratio beta in (0, 1]")->capture_default_str();
    solve->add_option("--alpha1", alpha1, "Outer-station multiplier")->capture_default_str();
    solve->add_flag("--alwabp", alwabp, "Instance has worker-dependent times");

    SimulationArgs sim_args;
    auto *simulate = app.add_subcommand("simulate", "Monte Carlo simulation of a solved line");
    add_simulation_options(*simulate, sim_args);

    std::string spec_path;
    auto *sweep = app.add_subcommand("sweep", "Balanced versus bowl comparison over an instance set");
    sweep->add_option("spec", spec_path, "Experiment config (key = value)")->required();

    SimulationArgs welch_args;
    int window = 5;
    double epsilon = 0.01;
    auto *welch = app.add_subcommand("welch", "Warm-up curve of a solved line");
    add_simulation_options(*welch, welch_args);
    welch->add_option("--window", window, "Moving-average window")->capture_default_str();
    welch->add_option("--epsilon", epsilon, "Relative tolerance of the plateau")->capture_default_str();

    GeneratorOptions gen;
    std::string gen_graph = "MIXED";
    std::string gen_times = "bimodal";
    std::string gen_workers;
    double gen_incapable = 0.2;
    auto *generate = app.add_subcommand("generate", "Write a random instance");
    generate->add_option("--tasks", gen.tasks, "Task count")->capture_default_str();
    generate->add_option("--stations", gen.stations, "Station count (ALWABP worker count)")->capture_default_str();
    generate->add_option("--graph", gen_graph, "BN, CH or MIXED")->capture_default_str();
    generate->add_option("--times", gen_times, "bimodal or bottom-peak")->capture_default_str();
    generate->add_option("--seed", gen.seed, "Seed")->capture_default_str();
    generate->add_option("--workers", gen_workers, "low or high: emit an ALWABP instance");
    generate->add_option("--incapable", gen_incapable, "ALWABP incapability probability")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInvalidInput;
    }

    try {
        if (*solve) {
            const auto profile = load_profile(stations, parse_rational(alpha1), parse_rational(beta));
            ConfigurationDocument document;
            if (alwabp) {
                auto instance = load_alwabp_file(instance_path);
                instance.stations = stations;
                document.configuration = solve_alwabp(instance, profile);
                document.task_times = station_task_times(instance, document.configuration);
            } else {
                const auto instance = load_alb_file(instance_path, stations);
                document.configuration = solve_salbp(instance, profile);
                document.task_times = station_task_times(instance, document.configuration);
            }
            out << configuration_to_json(document);
        } else if (*simulate) {
            const auto config = make_sim_config(sim_args);
            MonteCarloOptions options;
            options.threads = sim_args.threads;
            out << summary_to_json(run_monte_carlo(config, sim_args.reps, options));
        } else if (*sweep) {
            const auto spec = load_experiment_spec(spec_path);
            const auto report = run_sweep(spec);
            for (const auto &f : report.failures) err << "instance " << f.instance << " skipped: " << f.message << '\n';
            const auto rows = emit_rows_csv(report);
            const auto aggregates = emit_aggregates_csv(report);
            if (spec.rows_csv.empty()) out << rows;
            else write_file(spec.rows_csv, rows);
            if (spec.aggregates_csv.empty()) out << (spec.rows_csv.empty() ? "\n" : "") << aggregates;
            else write_file(spec.aggregates_csv, aggregates);
            if (!spec.report_json.empty()) write_file(spec.report_json, emit_report_json(report));
            if (!spec.curves_csv.empty()) write_file(spec.curves_csv, emit_curves_csv(report));
        } else if (*welch) {
            const auto config = make_sim_config(welch_args);
            if (welch_args.reps < 2) throw InputError("welch needs --reps >= 2");
            MonteCarloOptions options;
            options.threads = welch_args.threads;
            options.keep_completion_times = true;
            const auto summary = run_monte_carlo(config, welch_args.reps, options);
            out << welch_curve_to_json(welch_warmup(summary.completion_times, window, epsilon));
        } else if (*generate) {
            gen.structure = parse_structure(gen_graph);
            gen.times = parse_times(gen_times);
            const auto base = generate_salbp(gen);
            if (gen_workers.empty()) {
                out << write_alb(base);
            } else {
                if (gen_workers != "low" && gen_workers != "high") throw InputError("--workers must be low or high");
                const auto variance = gen_workers == "low" ? WorkerVariance::Low : WorkerVariance::High;
                out << write_alwabp(generate_alwabp(base, variance, gen_incapable, gen.seed));
            }
        }
    } catch (const InputError &e) {
        err << "error: " << e.what() << '\n';
        return kExitInvalidInput;
    } catch (const GuardError &e) {
        err << "guard: " << e.what() << '\n';
        return kExitGuard;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return kExitInvalidInput;
    }
    return kExitOk;
}

} // namespace bowl::cli
