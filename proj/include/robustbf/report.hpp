#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"
#include "robustbf/bench.hpp"

namespace robustbf {

enum class ReportFormat { json, csv };

std::optional<ReportFormat> parse_report_format(std::string_view name) noexcept;

inline constexpr int kReportSchemaVersion = 1;

/// Fixed column order:
/// filter,workload,n,epsilon,variant,k,X,Y,beta,memory_bits,bits_per_element,
/// ops,seconds,mops,fp_count,neg_queries,fpp,accuracy_pct
std::string_view csv_header() noexcept;
std::string to_csv(const BenchReport& report);

nlohmann::ordered_json to_json(const BenchRow& row);
nlohmann::ordered_json to_json(const BenchReport& report);
nlohmann::ordered_json to_json(const HashSelectionReport& report);

/// Reads rows back from the JSON produced by to_json(BenchReport).
BenchReport bench_report_from_json(const nlohmann::json& doc);

/// Writes to `path`, or to stdout when path is "-". Throws IoError when the
/// file cannot be written.
void emit_report(const BenchReport& report, ReportFormat format, const std::filesystem::path& path);
/// CSV output is the flattened per-variant rows.
void emit_report(const HashSelectionReport& report, ReportFormat format, const std::filesystem::path& path);

}  // namespace robustbf
