#include "edss/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>
#include <utility>

#include "edss/baselines.hpp"
#include "edss/decoder.hpp"
#include "edss/errors.hpp"
#include "edss/io.hpp"

namespace edss {

namespace {

std::string number(double v, int digits = 10) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

std::vector<std::string> split(std::string_view line, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(sep, start);
        out.emplace_back(line.substr(start, pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

std::vector<TracePoint> thin(const std::vector<TracePoint>& trace, std::size_t max_points) {
    if (max_points == 0 || trace.size() <= max_points) return trace;
    std::vector<TracePoint> out;
    out.reserve(max_points);
    const std::size_t n = trace.size();
    for (std::size_t i = 0; i < max_points; ++i)
        out.push_back(trace[max_points == 1 ? n - 1 : i * (n - 1) / (max_points - 1)]);
    return out;
}

double mean_of(std::span<const double> xs) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s / static_cast<double>(xs.size());
}

} // namespace

std::string_view to_string(Algorithm algo) {
    switch (algo) {
    case Algorithm::Rlga: return "rlga";
    case Algorithm::RlgaWe: return "rlga_we";
    case Algorithm::ClassicGa: return "classic_ga";
    case Algorithm::Cha: return "cha";
    }
    return "unknown";
}

Algorithm parse_algorithm(std::string_view name) {
    for (Algorithm a : {Algorithm::Rlga, Algorithm::RlgaWe, Algorithm::ClassicGa, Algorithm::Cha})
        if (to_string(a) == name) return a;
    throw InputError("unknown algorithm '" + std::string(name) + "' (expected rlga, rlga_we, classic_ga or cha)");
}

RunResult run_algorithm(Algorithm algo, const Instance& instance, const SolverConfig& cfg) {
    switch (algo) {
    case Algorithm::Rlga: {
        SolverConfig c = cfg;
        c.elite_retention = true;
        return run_rlga(instance, c);
    }
    case Algorithm::RlgaWe: {
        SolverConfig c = cfg;
        c.elite_retention = false;
        return run_rlga(instance, c);
    }
    case Algorithm::ClassicGa: return run_classic_ga(instance, cfg);
    case Algorithm::Cha: {
        const auto started = std::chrono::steady_clock::now();
        RunResult r;
        r.algorithm = "cha";
        r.seed = cfg.seed;
        r.best_order = profit_order(instance);
        r.best_plan = decode(r.best_order, instance);
        r.decodes = 1;
        r.trace.push_back(TracePoint{1, r.best_plan.profit});
        r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
        return r;
    }
    }
    throw InputError("unknown algorithm");
}

void ExperimentConfig::validate() const {
    if (runs < 1) throw InputError("runs must be >= 1");
    if (algorithms.empty()) throw InputError("at least one algorithm is required");
    if (instances.empty()) throw InputError("at least one instance is required");
    for (const auto& src : instances) {
        if (src.name.empty() || src.name.find_first_of(",/\\\n") != std::string::npos)
            throw InputError("instance name '" + src.name + "' is empty or contains , / \\ or newline");
    }
    solver.validate();
}

double rank_sum_test(std::span<const double> a, std::span<const double> b) {
    if (a.size() < 5 || b.size() < 5) throw InputError("rank_sum_test needs at least 5 values per sample");
    const double n1 = static_cast<double>(a.size());
    const double n2 = static_cast<double>(b.size());
    const double n = n1 + n2;

    std::vector<std::pair<double, int>> pooled;
    pooled.reserve(a.size() + b.size());
    for (double x : a) pooled.emplace_back(x, 0);
    for (double x : b) pooled.emplace_back(x, 1);
    std::sort(pooled.begin(), pooled.end());

    // Mid-ranks; tie term accumulates sum(t^3 - t) over tie groups.
    double rank_sum_a = 0.0;
    double tie_term = 0.0;
    for (std::size_t i = 0; i < pooled.size();) {
        std::size_t j = i;
        while (j < pooled.size() && pooled[j].first == pooled[i].first) ++j;
        const double t = static_cast<double>(j - i);
        const double mid = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
        for (std::size_t k = i; k < j; ++k)
            if (pooled[k].second == 0) rank_sum_a += mid;
        tie_term += t * t * t - t;
        i = j;
    }

    const double u = rank_sum_a - n1 * (n1 + 1.0) / 2.0;
    const double mu = n1 * n2 / 2.0;
    const double var = n1 * n2 / 12.0 * ((n + 1.0) - tie_term / (n * (n - 1.0)));
    if (var <= 0.0) return 1.0; // every value tied
    const double z = (u - mu) / std::sqrt(var);
    return std::clamp(std::erfc(std::abs(z) / std::sqrt(2.0)), 0.0, 1.0);
}

std::vector<StatRow> summarize(std::span<const RunRecord> runs, Algorithm reference, bool timing) {
    using Key = std::pair<std::string, Algorithm>;
    std::vector<Key> order;
    std::map<Key, std::vector<const RunRecord*>> groups;
    for (const RunRecord& r : runs) {
        Key key{r.instance, r.algorithm};
        auto [it, inserted] = groups.try_emplace(key);
        if (inserted) order.push_back(key);
        it->second.push_back(&r);
    }

    auto profits_of = [&](const Key& key) {
        auto recs = groups.at(key);
        std::sort(recs.begin(), recs.end(), [](const RunRecord* x, const RunRecord* y) { return x->seed < y->seed; });
        std::vector<double> out;
        for (const RunRecord* r : recs) out.push_back(static_cast<double>(r->profit));
        return out;
    };

    std::vector<StatRow> rows;
    for (const Key& key : order) {
        const auto profits = profits_of(key);
        StatRow row;
        row.instance = key.first;
        row.algorithm = std::string(to_string(key.second));
        row.best = *std::max_element(profits.begin(), profits.end());
        row.mean = mean_of(profits);
        if (profits.size() > 1) {
            double ss = 0.0;
            for (double p : profits) ss += (p - row.mean) * (p - row.mean);
            row.std_dev = std::sqrt(ss / static_cast<double>(profits.size() - 1));
        }
        const Key ref{key.first, reference};
        if (key.second != reference && groups.contains(ref)) {
            const auto ref_profits = profits_of(ref);
            if (ref_profits.size() >= 5 && profits.size() >= 5) row.p_value = rank_sum_test(ref_profits, profits);
        }
        if (timing) {
            double total = 0.0;
            for (const RunRecord* r : groups.at(key)) total += r->cpu_ms;
            row.mean_cpu_ms = total / static_cast<double>(groups.at(key).size());
        }
        bool feasible = std::all_of(groups.at(key).begin(), groups.at(key).end(),
                                    [](const RunRecord* r) { return r->feasible; });
        if (!feasible) row.error = "infeasible plan emitted";
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string stat_rows_to_csv(std::span<const StatRow> rows) {
    std::ostringstream os;
    os << kResultsHeader << '\n';
    for (const StatRow& r : rows) {
        os << r.instance << ',' << r.algorithm << ',';
        if (!r.error.empty()) {
            os << ",,,,\n";
            continue;
        }
        os << number(r.best) << ',' << number(r.mean) << ',' << number(r.std_dev) << ',';
        if (r.p_value) os << number(*r.p_value, 6);
        os << ',';
        if (r.mean_cpu_ms) os << number(*r.mean_cpu_ms, 6);
        os << '\n';
    }
    return os.str();
}

std::string runs_to_csv(std::span<const RunRecord> runs, bool timing) {
    std::ostringstream os;
    os << "instance,algorithm,seed,profit,decodes,feasible,cpu_ms\n";
    for (const RunRecord& r : runs) {
        os << r.instance << ',' << to_string(r.algorithm) << ',' << r.seed << ',' << r.profit << ',' << r.decodes
           << ',' << (r.feasible ? 1 : 0) << ',';
        if (timing) os << number(r.cpu_ms, 6);
        os << '\n';
    }
    return os.str();
}

std::vector<RunRecord> runs_from_csv(std::string_view text) {
    std::vector<RunRecord> out;
    std::istringstream in{std::string(text)};
    std::string line;
    if (!std::getline(in, line) || line.rfind("instance,algorithm,seed,profit", 0) != 0)
        throw InputError("raw results must start with the header instance,algorithm,seed,profit,...");
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto cols = split(line, ',');
        if (cols.size() < 4) throw InputError("runs line " + std::to_string(line_no) + ": too few columns");
        try {
            RunRecord r;
            r.instance = cols[0];
            r.algorithm = parse_algorithm(cols[1]);
            r.seed = std::stoull(cols[2]);
            r.profit = std::stoll(cols[3]);
            if (cols.size() > 4 && !cols[4].empty()) r.decodes = std::stoull(cols[4]);
            if (cols.size() > 5 && !cols[5].empty()) r.feasible = cols[5] != "0";
            if (cols.size() > 6 && !cols[6].empty()) r.cpu_ms = std::stod(cols[6]);
            out.push_back(std::move(r));
        } catch (const std::logic_error& e) { // stoll & co. throw invalid_argument/out_of_range
            throw InputError("runs line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return out;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    const std::size_t n_inst = cfg.instances.size();
    const std::size_t n_algo = cfg.algorithms.size();
    const auto n_runs = static_cast<std::size_t>(cfg.runs);

    std::vector<std::optional<Instance>> instances(n_inst);
    std::vector<std::string> load_errors(n_inst);
    for (std::size_t i = 0; i < n_inst; ++i) {
        const InstanceSource& src = cfg.instances[i];
        try {
            instances[i] = src.spec ? generate_instance(*src.spec) : instance_from_json(read_text_file(src.path));
            if (!cfg.out_dir.empty() && src.spec)
                write_text_file(cfg.out_dir / "instances" / (src.name + ".json"), instance_to_json(*instances[i]));
        } catch (const std::exception& e) {
            load_errors[i] = e.what();
        }
    }

    struct Job {
        std::size_t inst;
        std::size_t algo;
        std::size_t run;
    };
    std::vector<Job> jobs;
    for (std::size_t i = 0; i < n_inst; ++i) {
        if (!instances[i]) continue;
        for (std::size_t a = 0; a < n_algo; ++a)
            for (std::size_t r = 0; r < n_runs; ++r) jobs.push_back(Job{i, a, r});
    }

    std::vector<RunRecord> records(jobs.size());
    std::vector<std::string> job_errors(jobs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t j = next++; j < jobs.size(); j = next++) {
            const Job& job = jobs[j];
            const Instance& inst = *instances[job.inst];
            SolverConfig sc = cfg.solver;
            sc.seed = cfg.base_seed + job.run;
            RunRecord& rec = records[j];
            rec.instance = cfg.instances[job.inst].name;
            rec.algorithm = cfg.algorithms[job.algo];
            rec.seed = sc.seed;
            try {
                const RunResult res = run_algorithm(rec.algorithm, inst, sc);
                rec.profit = res.best_plan.profit;
                rec.cpu_ms = res.elapsed_ms;
                rec.decodes = res.decodes;
                rec.feasible = validate_plan(inst, res.best_plan).feasible() &&
                               plan_profit(inst, res.best_plan) == res.best_plan.profit;
                for (std::size_t k = 1; k < res.trace.size(); ++k)
                    if (res.trace[k].best < res.trace[k - 1].best)
                        throw StructuralError("convergence trace decreases at evaluation " +
                                              std::to_string(res.trace[k].eval));
                rec.trace = thin(res.trace, cfg.trace_points);
            } catch (const std::exception& e) {
                job_errors[j] = e.what();
                rec.feasible = false;
            }
        }
    };
    unsigned threads = cfg.threads != 0 ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(jobs.size(), 1)));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    }

    ExperimentResult result;
    const Algorithm reference = cfg.algorithms.front();
    for (std::size_t i = 0; i < n_inst; ++i) {
        const std::string& name = cfg.instances[i].name;
        if (!instances[i]) {
            for (Algorithm a : cfg.algorithms)
                result.rows.push_back(StatRow{name, std::string(to_string(a)), 0, 0, 0, {}, {}, load_errors[i]});
            continue;
        }
        std::vector<RunRecord> mine;
        for (std::size_t j = 0; j < jobs.size(); ++j)
            if (jobs[j].inst == i) mine.push_back(records[j]);
        auto rows = summarize(mine, reference, cfg.timing);
        for (std::size_t j = 0; j < jobs.size(); ++j) {
            if (jobs[j].inst != i || job_errors[j].empty()) continue;
            for (StatRow& row : rows)
                if (row.algorithm == to_string(cfg.algorithms[jobs[j].algo])) row.error = job_errors[j];
        }
        result.rows.insert(result.rows.end(), rows.begin(), rows.end());
    }
    result.runs = std::move(records);

    if (!cfg.out_dir.empty()) {
        write_text_file(cfg.out_dir / "results.csv", stat_rows_to_csv(result.rows));
        write_text_file(cfg.out_dir / "runs.csv", runs_to_csv(result.runs, cfg.timing));
        std::ostringstream errors;
        errors << "instance,algorithm,error\n";
        for (const StatRow& row : result.rows) {
            if (row.error.empty()) continue;
            std::string msg = row.error;
            std::replace(msg.begin(), msg.end(), ',', ';');
            std::replace(msg.begin(), msg.end(), '\n', ' ');
            errors << row.instance << ',' << row.algorithm << ',' << msg << '\n';
        }
        write_text_file(cfg.out_dir / "errors.csv", errors.str());
        for (const RunRecord& rec : result.runs) {
            if (rec.trace.empty()) continue;
            const auto file = cfg.out_dir / "traces" / rec.instance /
                              (std::string(to_string(rec.algorithm)) + "_" + std::to_string(rec.seed) + ".csv");
            write_text_file(file, trace_to_csv(rec.trace, 0));
        }
    }
    return result;
}

} // namespace edss
