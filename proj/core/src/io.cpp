#include "edss/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "edss/errors.hpp"
#include "edss/instgen.hpp"

namespace edss {

using nlohmann::json;

namespace {

json parse(std::string_view text) {
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw InputError(std::string("malformed JSON: ") + e.what());
    }
}

template <typename T>
T field(const json& obj, const char* key) {
    const auto it = obj.find(key);
    if (it == obj.end()) throw InputError(std::string("missing field '") + key + "'");
    try {
        return it->get<T>();
    } catch (const json::exception& e) {
        throw InputError(std::string("field '") + key + "': " + e.what());
    }
}

const json& array_field(const json& obj, const char* key) {
    const auto it = obj.find(key);
    if (it == obj.end() || !it->is_array()) throw InputError(std::string("missing array '") + key + "'");
    return *it;
}

json assignment_json(const Assignment& a) {
    return json{{"task", a.task}, {"sat", a.sat},     {"orbit", a.orbit}, {"window", a.window},
                {"st", a.st},     {"et", a.et},       {"data", a.data}};
}

json plan_json(const Plan& plan) {
    json assignments = json::array();
    for (const Assignment& a : plan.assignments) assignments.push_back(assignment_json(a));
    return json{{"assignments", std::move(assignments)}, {"profit", plan.profit}};
}

Plan plan_of(const json& doc) {
    if (!doc.is_object()) throw InputError("plan document must be a JSON object");
    Plan plan;
    for (const json& a : array_field(doc, "assignments")) {
        plan.assignments.push_back(Assignment{field<int>(a, "task"), field<int>(a, "sat"), field<int>(a, "orbit"),
                                              field<int>(a, "window"), field<Seconds>(a, "st"),
                                              field<Seconds>(a, "et"), field<double>(a, "data")});
    }
    plan.profit = field<Profit>(doc, "profit");
    return plan;
}

json gen_spec_object(const GenSpec& s) {
    return json{{"n_tasks", s.n_tasks},
                {"n_sats", s.n_sats},
                {"horizon", s.horizon},
                {"seed", s.seed},
                {"windows_per_task", {s.windows_per_task.first, s.windows_per_task.second}},
                {"window_span", {s.window_span.first, s.window_span.second}},
                {"semi_major_axis", s.semi_major_axis}};
}

} // namespace

std::string instance_to_json(const Instance& instance) {
    json tasks = json::array();
    for (const Task& t : instance.tasks()) {
        tasks.push_back(json{{"id", t.id},
                             {"est", t.est},
                             {"let", t.let},
                             {"dur", t.dur},
                             {"theta_max", t.theta_max},
                             {"degree", t.degree},
                             {"profit", t.profit},
                             {"fre", t.fre},
                             {"pol", t.pol},
                             {"mode", t.mode}});
    }
    json sats = json::array();
    for (const Satellite& s : instance.satellites()) {
        json orbits = json::array();
        for (const Orbit& o : s.orbits) orbits.push_back(json{{"id", o.id}, {"start", o.start}, {"end", o.end}});
        sats.push_back(json{{"id", s.id},
                            {"antenna_diameter", s.antenna_diameter},
                            {"antenna_efficiency", s.antenna_efficiency},
                            {"storage_capacity", s.storage_capacity},
                            {"beta", s.beta},
                            {"gamma_pol", s.gamma_pol},
                            {"gamma_mode", s.gamma_mode},
                            {"gamma_band", s.gamma_band},
                            {"gamma_fre", s.gamma_fre},
                            {"delta", s.delta},
                            {"orbits", std::move(orbits)}});
    }
    json windows = json::array();
    for (const TimeWindow& w : instance.windows()) {
        windows.push_back(json{{"sat", w.sat},
                               {"task", w.task},
                               {"orbit", w.orbit},
                               {"k", w.k},
                               {"evt", w.evt},
                               {"lvt", w.lvt},
                               {"theta_peak", w.theta_peak}});
    }
    json doc{{"format", "edss-instance/1"},
             {"horizon", instance.horizon()},
             {"tiers", {{"bandwidth", instance.tiers().bandwidth}, {"omega", instance.tiers().omega}}},
             {"tasks", std::move(tasks)},
             {"satellites", std::move(sats)},
             {"windows", std::move(windows)}};
    if (!instance.provenance().empty()) doc["gen_spec"] = parse(instance.provenance());
    return doc.dump(1) + "\n";
}

Instance instance_from_json(std::string_view text) {
    const json doc = parse(text);
    if (!doc.is_object()) throw InputError("instance document must be a JSON object");

    std::vector<Task> tasks;
    for (const json& t : array_field(doc, "tasks")) {
        tasks.push_back(Task{field<int>(t, "id"), field<Seconds>(t, "est"), field<Seconds>(t, "let"),
                             field<Seconds>(t, "dur"), field<double>(t, "theta_max"), field<int>(t, "degree"),
                             field<Profit>(t, "profit"), field<int>(t, "fre"), field<int>(t, "pol"),
                             field<int>(t, "mode")});
    }
    std::vector<Satellite> sats;
    for (const json& s : array_field(doc, "satellites")) {
        Satellite sat;
        sat.id = field<int>(s, "id");
        sat.antenna_diameter = field<double>(s, "antenna_diameter");
        sat.antenna_efficiency = field<double>(s, "antenna_efficiency");
        sat.storage_capacity = field<double>(s, "storage_capacity");
        sat.beta = field<double>(s, "beta");
        sat.gamma_pol = field<Seconds>(s, "gamma_pol");
        sat.gamma_mode = field<Seconds>(s, "gamma_mode");
        sat.gamma_band = field<Seconds>(s, "gamma_band");
        sat.gamma_fre = field<Seconds>(s, "gamma_fre");
        sat.delta = field<Seconds>(s, "delta");
        for (const json& o : array_field(s, "orbits"))
            sat.orbits.push_back(Orbit{field<int>(o, "id"), field<Seconds>(o, "start"), field<Seconds>(o, "end")});
        sats.push_back(std::move(sat));
    }
    std::vector<TimeWindow> windows;
    for (const json& w : array_field(doc, "windows")) {
        windows.push_back(TimeWindow{field<int>(w, "sat"), field<int>(w, "task"), field<int>(w, "orbit"),
                                     field<int>(w, "k"), field<Seconds>(w, "evt"), field<Seconds>(w, "lvt"),
                                     field<double>(w, "theta_peak")});
    }
    TierTable tiers;
    if (const auto it = doc.find("tiers"); it != doc.end()) {
        tiers.bandwidth = field<std::array<double, kTierCount>>(*it, "bandwidth");
        tiers.omega = field<std::array<double, kTierCount>>(*it, "omega");
    }
    const Seconds horizon = doc.contains("horizon") ? field<Seconds>(doc, "horizon") : kDefaultHorizon;
    std::string provenance;
    if (const auto it = doc.find("gen_spec"); it != doc.end()) provenance = it->dump();
    return Instance(std::move(tasks), std::move(sats), std::move(windows), tiers, horizon, std::move(provenance));
}

std::string plan_to_json(const Plan& plan) { return plan_json(plan).dump(1) + "\n"; }

Plan plan_from_json(std::string_view text) { return plan_of(parse(text)); }

std::string gen_spec_json(const GenSpec& spec) { return gen_spec_object(spec).dump(); }

GenSpec gen_spec_from_json(std::string_view text) {
    const json doc = parse(text);
    GenSpec spec;
    if (doc.contains("n_tasks")) spec.n_tasks = field<int>(doc, "n_tasks");
    if (doc.contains("n_sats")) spec.n_sats = field<int>(doc, "n_sats");
    if (doc.contains("horizon")) spec.horizon = field<Seconds>(doc, "horizon");
    if (doc.contains("seed")) spec.seed = field<std::uint64_t>(doc, "seed");
    if (doc.contains("windows_per_task")) spec.windows_per_task = field<std::pair<int, int>>(doc, "windows_per_task");
    if (doc.contains("window_span")) spec.window_span = field<std::pair<Seconds, Seconds>>(doc, "window_span");
    if (doc.contains("semi_major_axis")) spec.semi_major_axis = field<double>(doc, "semi_major_axis");
    return spec;
}

std::string run_result_to_json(const RunResult& r, bool with_timing) {
    json trace = json::array();
    for (const TracePoint& p : r.trace) trace.push_back({p.eval, p.best});
    json counts = json::object();
    for (int a = 0; a < kActionCount; ++a) counts[Action::from_index(a).name()] = r.action_counts[static_cast<std::size_t>(a)];
    json doc{{"algorithm", r.algorithm},
             {"seed", r.seed},
             {"best_profit", r.best_plan.profit},
             {"decodes", r.decodes},
             {"best_order", r.best_order},
             {"best_plan", plan_json(r.best_plan)},
             {"qtable", r.qtable.values},
             {"action_counts", std::move(counts)},
             {"trace", std::move(trace)}};
    if (with_timing) doc["elapsed_ms"] = r.elapsed_ms;
    return doc.dump(1) + "\n";
}

std::string trace_to_csv(std::span<const TracePoint> trace, std::size_t max_points) {
    std::ostringstream os;
    os << "eval,profit\n";
    const std::size_t n = trace.size();
    if (max_points == 0 || n <= max_points) {
        for (const TracePoint& p : trace) os << p.eval << ',' << p.best << '\n';
        return os.str();
    }
    // Evenly spaced indices, always including the first and last point.
    for (std::size_t i = 0; i < max_points; ++i) {
        const std::size_t idx = max_points == 1 ? n - 1 : i * (n - 1) / (max_points - 1);
        os << trace[idx].eval << ',' << trace[idx].best << '\n';
    }
    return os.str();
}

std::string report_to_text(const ValidationReport& report) {
    std::ostringstream os;
    if (report.feasible()) {
        os << "feasible: 0 violations\n";
        return os.str();
    }
    os << "infeasible: " << report.violations.size() << " violation(s)\n";
    for (const Violation& v : report.violations) {
        os << to_string(v.kind) << "\ttask=" << v.task;
        if (v.other_task >= 0) os << "\tother=" << v.other_task;
        os << '\t' << v.detail << '\n';
    }
    return os.str();
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path.string());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write " + path.string());
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw InputError("failed writing " + path.string());
}

} // namespace edss
