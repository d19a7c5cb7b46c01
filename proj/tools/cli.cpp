#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "edss/baselines.hpp"
#include "edss/bench.hpp"
#include "edss/errors.hpp"
#include "edss/instgen.hpp"
#include "edss/io.hpp"
#include "edss/rlga.hpp"

namespace edss::cli {

namespace fs = std::filesystem;

namespace {

void add_solver_flags(CLI::App& cmd, SolverConfig& cfg) {
    cmd.add_option("--mfe", cfg.mfe, "Evaluation budget")->capture_default_str();
    cmd.add_option("--np", cfg.np, "Population size")->capture_default_str();
    cmd.add_option("--alpha", cfg.alpha, "Q-learning rate")->capture_default_str();
    cmd.add_option("--gamma", cfg.gamma, "Q-learning discount")->capture_default_str();
    cmd.add_option("--temp", cfg.temp, "Softmax control parameter T")->capture_default_str();
    cmd.add_option("--eps", cfg.eps, "Random-action probability")->capture_default_str();
    cmd.add_option("--thre", cfg.thre, "Non-improving generations before elite retention stops")
        ->capture_default_str();
    cmd.add_option("--seg-len", cfg.seg_len, "Crossover segment length L")->capture_default_str();
}

std::vector<Algorithm> parse_algorithms(const std::string& list) {
    std::vector<Algorithm> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(parse_algorithm(item));
    if (out.empty()) throw InputError("--algo needs at least one algorithm");
    return out;
}

std::vector<int> parse_int_list(const std::string& list) {
    std::vector<int> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        try {
            out.push_back(std::stoi(item));
        } catch (const std::logic_error&) {
            throw InputError("not an integer: '" + item + "'");
        }
    }
    return out;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Electromagnetic detection satellite scheduling: instance generation, solvers, validation "
                 "and benchmarking"};
    app.name("edss");
    app.require_subcommand(1);

    // gen
    GenSpec gen;
    std::string gen_out;
    auto* gen_cmd = app.add_subcommand("gen", "Generate a synthetic instance");
    gen_cmd->add_option("--tasks", gen.n_tasks, "Number of tasks")->capture_default_str();
    gen_cmd->add_option("--sats", gen.n_sats, "Number of satellites")->capture_default_str();
    gen_cmd->add_option("--seed", gen.seed, "Generator seed")->capture_default_str();
    gen_cmd->add_option("--horizon", gen.horizon, "Planning horizon in seconds")->capture_default_str();
    gen_cmd->add_option("--windows-min", gen.windows_per_task.first, "Fewest windows per task")->capture_default_str();
    gen_cmd->add_option("--windows-max", gen.windows_per_task.second, "Most windows per task")->capture_default_str();
    gen_cmd->add_option("--span-min", gen.window_span.first, "Shortest window (s)")->capture_default_str();
    gen_cmd->add_option("--span-max", gen.window_span.second, "Longest window (s)")->capture_default_str();
    gen_cmd->add_option("--sma", gen.semi_major_axis, "Semi-major axis (km)")->capture_default_str();
    gen_cmd->add_option("--out", gen_out, "Instance file to write")->required();

    // solve
    SolverConfig solve_cfg;
    std::string solve_instance;
    std::string solve_algo = "rlga";
    std::string solve_out;
    bool solve_timing = false;
    auto* solve_cmd = app.add_subcommand("solve", "Solve one instance with one algorithm");
    solve_cmd->add_option("--instance", solve_instance, "Instance file")->required();
    solve_cmd->add_option("--algo", solve_algo, "rlga | rlga_we | classic_ga | cha")->capture_default_str();
    solve_cmd->add_option("--seed", solve_cfg.seed, "Solver seed")->capture_default_str();
    add_solver_flags(*solve_cmd, solve_cfg);
    solve_cmd->add_option("--out", solve_out, "Output directory (plan.json, trace.csv, result.json)")->required();
    solve_cmd->add_flag("--timing", solve_timing, "Include elapsed time in result.json");

    // validate
    std::string val_instance;
    std::string val_plan;
    auto* val_cmd = app.add_subcommand("validate", "Check a plan against every constraint");
    val_cmd->add_option("--instance", val_instance, "Instance file")->required();
    val_cmd->add_option("--plan", val_plan, "Plan file")->required();

    // bench
    ExperimentConfig bench;
    std::vector<std::string> bench_instances;
    std::string bench_algos = "rlga,classic_ga,cha";
    std::string bench_sizes;
    int bench_per_size = 4;
    int bench_sats = 2;
    std::uint64_t bench_gen_seed = 1;
    std::string bench_out;
    auto* bench_cmd = app.add_subcommand("bench", "Repeated runs, statistics and convergence logs");
    bench_cmd->add_option("--instance", bench_instances, "Instance file (repeatable)");
    bench_cmd->add_option("--gen-tasks", bench_sizes, "Generate instances with these task counts, e.g. 300,600");
    bench_cmd->add_option("--gen-count", bench_per_size, "Generated instances per task count")->capture_default_str();
    bench_cmd->add_option("--gen-sats", bench_sats, "Satellites in generated instances")->capture_default_str();
    bench_cmd->add_option("--gen-seed", bench_gen_seed, "First generator seed")->capture_default_str();
    bench_cmd->add_option("--algo", bench_algos, "Comma-separated algorithms; the first is the p-value reference")
        ->capture_default_str();
    bench_cmd->add_option("--runs", bench.runs, "Runs per instance and algorithm")->capture_default_str();
    bench_cmd->add_option("--seed", bench.base_seed, "Seed of the first run")->capture_default_str();
    add_solver_flags(*bench_cmd, bench.solver);
    bench_cmd->add_option("--threads", bench.threads, "Worker threads (0 = all cores)")->capture_default_str();
    bench_cmd->add_option("--trace-points", bench.trace_points, "Max points per convergence log")
        ->capture_default_str();
    bench_cmd->add_flag("--timing", bench.timing, "Record wall time (makes outputs run-dependent)");
    bench_cmd->add_option("--out", bench_out, "Output directory")->required();

    // stats
    std::string stats_runs;
    std::string stats_reference = "rlga";
    std::string stats_out;
    bool stats_timing = false;
    auto* stats_cmd = app.add_subcommand("stats", "Summarise a raw runs.csv into result rows");
    stats_cmd->add_option("--runs", stats_runs, "runs.csv written by bench")->required();
    stats_cmd->add_option("--reference", stats_reference, "Algorithm the p-values compare against")
        ->capture_default_str();
    stats_cmd->add_flag("--timing", stats_timing, "Include mean_cpu_ms from the raw file");
    stats_cmd->add_option("--out", stats_out, "results.csv to write (default: stdout)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kExitInputError;
    }

    try {
        if (*gen_cmd) {
            const Instance inst = generate_instance(gen);
            write_text_file(gen_out, instance_to_json(inst));
            out << "wrote " << gen_out << ": " << inst.task_count() << " tasks, " << inst.windows().size()
                << " windows\n";
            return kExitOk;
        }

        if (*solve_cmd) {
            const Instance inst = instance_from_json(read_text_file(solve_instance));
            const Algorithm algo = parse_algorithm(solve_algo);
            const RunResult res = run_algorithm(algo, inst, solve_cfg);
            const fs::path dir = solve_out;
            write_text_file(dir / "plan.json", plan_to_json(res.best_plan));
            write_text_file(dir / "trace.csv", trace_to_csv(res.trace, 0));
            write_text_file(dir / "result.json", run_result_to_json(res, solve_timing));
            const ValidationReport report = validate_plan(inst, res.best_plan);
            out << to_string(algo) << ": profit " << res.best_plan.profit << ", " << res.best_plan.assignments.size()
                << "/" << inst.task_count() << " tasks, " << res.decodes << " decodes\n";
            if (!report.feasible()) {
                err << report_to_text(report);
                return kExitInfeasible;
            }
            return kExitOk;
        }

        if (*val_cmd) {
            const Instance inst = instance_from_json(read_text_file(val_instance));
            const Plan plan = plan_from_json(read_text_file(val_plan));
            const ValidationReport report = validate_plan(inst, plan);
            out << report_to_text(report);
            const Profit actual = plan_profit(inst, plan);
            if (actual != plan.profit) {
                out << "profit mismatch: plan states " << plan.profit << ", assignments sum to " << actual << '\n';
                return kExitInfeasible;
            }
            return report.feasible() ? kExitOk : kExitInfeasible;
        }

        if (*bench_cmd) {
            bench.algorithms = parse_algorithms(bench_algos);
            bench.out_dir = bench_out;
            for (const std::string& path : bench_instances)
                bench.instances.push_back(InstanceSource{fs::path(path).stem().string(), path, std::nullopt});
            std::uint64_t seed = bench_gen_seed;
            for (int size : parse_int_list(bench_sizes)) {
                for (int k = 1; k <= bench_per_size; ++k) {
                    GenSpec spec;
                    spec.n_tasks = size;
                    spec.n_sats = bench_sats;
                    spec.seed = seed++;
                    bench.instances.push_back(
                        InstanceSource{std::to_string(size) + "-" + std::to_string(k), {}, spec});
                }
            }
            const ExperimentResult res = run_experiment(bench);
            out << stat_rows_to_csv(res.rows);
            bool load_error = false;
            bool infeasible = false;
            for (const StatRow& row : res.rows)
                if (!row.error.empty()) (row.error == "infeasible plan emitted" ? infeasible : load_error) = true;
            for (const RunRecord& r : res.runs) infeasible = infeasible || !r.feasible;
            if (load_error) return kExitInputError;
            return infeasible ? kExitInfeasible : kExitOk;
        }

        if (*stats_cmd) {
            const auto runs = runs_from_csv(read_text_file(stats_runs));
            const auto rows = summarize(runs, parse_algorithm(stats_reference), stats_timing);
            const std::string csv = stat_rows_to_csv(rows);
            if (stats_out.empty()) {
                out << csv;
            } else {
                write_text_file(stats_out, csv);
            }
            return kExitOk;
        }
    } catch (const InputError& e) {
        err << "input error: " << e.what() << '\n';
        return kExitInputError;
    } catch (const StructuralError& e) {
        err << "structural error: " << e.what() << '\n';
        return kExitInputError;
    } catch (const fs::filesystem_error& e) {
        err << "filesystem error: " << e.what() << '\n';
        return kExitInputError;
    }
    return kExitInputError;
}

} // namespace edss::cli
