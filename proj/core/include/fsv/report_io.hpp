#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fsv/experiment.hpp"

namespace fsv {

/// 18-row table (6 metrics x 3 methods) for dataset size n, with
/// mean/min/max columns for every trial count, values to 4 decimals.
/// Throws ValidationError if the report has no cell for n.
std::string emit_markdown_table(const ExperimentReport& report, std::size_t n);

/// Long format, header `N,T,method,metric,trial,value`, 10 significant digits.
std::string trials_csv(const ExperimentReport& report);
/// Header `N,T,method,metric,mean,min,max`, one row per (cell, method, metric).
std::string summary_csv(const ExperimentReport& report);

/// Writes trials.csv and summary.csv into `dir` (created if needed).
void emit_csv(const ExperimentReport& report, const std::filesystem::path& dir);

nlohmann::json to_json(const ExperimentReport& report, bool include_timing = true);
ExperimentReport report_from_json(const nlohmann::json& j);

void emit_json(const ExperimentReport& report, const std::filesystem::path& path);
ExperimentReport read_json(const std::filesystem::path& path);

/// Per-trial series for one cell: `trial,<METHOD>_<metric>,...`.
std::string plot_csv(const CellReport& cell);

/// One plot_N<N>_T<T>.csv per cell in `dir`. Returns the written paths.
std::vector<std::filesystem::path> emit_plotdata(const ExperimentReport& report, const std::filesystem::path& dir);

/// Writes `text` to `path`, throwing IoError with the path on failure.
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace fsv
