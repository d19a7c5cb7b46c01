#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>

#include "edss/model.hpp"
#include "edss/rlga.hpp"

namespace edss {

struct GenSpec;

// JSON documents. An instance file is one object with `tasks`,
// `satellites`, `windows`, `tiers`, `horizon` and optionally `gen_spec`; a
// plan file is one object with `assignments` and `profit`. Readers ignore
// keys they do not need, so a combined file serves as both. Parse errors
// and missing fields throw InputError.

[[nodiscard]] std::string instance_to_json(const Instance& instance);
[[nodiscard]] Instance instance_from_json(std::string_view text);

[[nodiscard]] std::string plan_to_json(const Plan& plan);
[[nodiscard]] Plan plan_from_json(std::string_view text);

[[nodiscard]] std::string gen_spec_json(const GenSpec& spec);
[[nodiscard]] GenSpec gen_spec_from_json(std::string_view text);

/// Best plan, order, trace as [eval, best] pairs, Q-table, action counts
/// and decode count. Elapsed time is included only when `with_timing`.
[[nodiscard]] std::string run_result_to_json(const RunResult& result, bool with_timing);

/// Two-column `eval,profit` CSV with a header row, thinned to at most
/// `max_points` rows (the last point is always kept). 0 keeps everything.
[[nodiscard]] std::string trace_to_csv(std::span<const TracePoint> trace, std::size_t max_points);

[[nodiscard]] std::string report_to_text(const ValidationReport& report);

[[nodiscard]] std::string read_text_file(const std::filesystem::path& path);
/// Creates parent directories as needed.
void write_text_file(const std::filesystem::path& path, std::string_view text);

} // namespace edss
