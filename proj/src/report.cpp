#include "robustbf/report.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>

#include "robustbf/errors.hpp"

namespace robustbf {

namespace {

// Shortest representation that round-trips exactly.
std::string format_double(double v) {
  std::array<char, 32> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), end);
}

std::string format_optional(const std::optional<std::uint32_t>& v) { return v ? std::to_string(*v) : std::string{}; }

nlohmann::ordered_json optional_json(const std::optional<std::uint32_t>& v) {
  return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
}

std::optional<std::uint32_t> optional_from_json(const nlohmann::json& v) {
  return v.is_null() ? std::nullopt : std::optional<std::uint32_t>{v.get<std::uint32_t>()};
}

void write_text(const std::string& text, const std::filesystem::path& path) {
  if (path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("cannot open " + path.string() + " for writing");
  }
  out << text;
  out.flush();
  if (!out) {
    throw IoError("failed writing " + path.string());
  }
}

}  // namespace

std::optional<ReportFormat> parse_report_format(std::string_view name) noexcept {
  if (name == "json") {
    return ReportFormat::json;
  }
  if (name == "csv") {
    return ReportFormat::csv;
  }
  return std::nullopt;
}

std::string_view csv_header() noexcept {
  return "filter,workload,n,epsilon,variant,k,X,Y,beta,memory_bits,bits_per_element,ops,seconds,mops,fp_count,"
         "neg_queries,fpp,accuracy_pct";
}

std::string to_csv(const BenchReport& report) {
  std::ostringstream out;
  out << csv_header() << '\n';
  for (const auto& r : report.rows) {
    out << r.filter << ',' << r.workload << ',' << r.n << ',' << format_double(r.epsilon) << ',' << r.variant << ','
        << r.k << ',' << format_optional(r.x) << ',' << format_optional(r.y) << ',' << format_optional(r.beta) << ','
        << r.memory_bits << ',' << format_double(r.bits_per_element) << ',' << r.ops << ','
        << format_double(r.seconds) << ',' << format_double(r.mops) << ',' << r.fp_count << ',' << r.neg_queries
        << ',' << format_double(r.fpp) << ',' << format_double(r.accuracy_pct) << '\n';
  }
  return out.str();
}

nlohmann::ordered_json to_json(const BenchRow& r) {
  nlohmann::ordered_json j;
  j["filter"] = r.filter;
  j["workload"] = r.workload;
  j["n"] = r.n;
  j["epsilon"] = r.epsilon;
  j["variant"] = r.variant;
  j["k"] = r.k;
  j["X"] = optional_json(r.x);
  j["Y"] = optional_json(r.y);
  j["beta"] = optional_json(r.beta);
  j["memory_bits"] = r.memory_bits;
  j["bits_per_element"] = r.bits_per_element;
  j["ops"] = r.ops;
  j["seconds"] = r.seconds;
  j["mops"] = r.mops;
  j["fp_count"] = r.fp_count;
  j["neg_queries"] = r.neg_queries;
  j["fpp"] = r.fpp;
  j["accuracy_pct"] = r.accuracy_pct;
  j["probes"] = r.probes;
  return j;
}

nlohmann::ordered_json to_json(const BenchReport& report) {
  nlohmann::ordered_json doc;
  doc["schema"] = "robustbf.bench";
  doc["schema_version"] = kReportSchemaVersion;
  doc["rows"] = nlohmann::ordered_json::array();
  for (const auto& r : report.rows) {
    doc["rows"].push_back(to_json(r));
  }
  return doc;
}

nlohmann::ordered_json to_json(const HashSelectionReport& report) {
  nlohmann::ordered_json doc;
  doc["schema"] = "robustbf.hash_select";
  doc["schema_version"] = kReportSchemaVersion;
  doc["n"] = report.n;
  doc["epsilon"] = report.epsilon;
  doc["recommended"] = report.recommended ? nlohmann::ordered_json(report.recommended->label())
                                          : nlohmann::ordered_json(nullptr);
  doc["variants"] = nlohmann::ordered_json::array();
  for (const auto& v : report.variants) {
    nlohmann::ordered_json entry;
    entry["variant"] = v.variant.label();
    entry["block_bytes"] = v.variant.block_bytes();
    entry["eligible"] = v.eligible;
    entry["max_fpp"] = v.max_fpp;
    entry["mixed_fpp"] = v.mixed_fpp;
    entry["lookup_mops"] = v.lookup_mops;
    entry["rows"] = nlohmann::ordered_json::array();
    for (const auto& r : v.rows) {
      entry["rows"].push_back(to_json(r));
    }
    doc["variants"].push_back(std::move(entry));
  }
  return doc;
}

BenchReport bench_report_from_json(const nlohmann::json& doc) {
  if (doc.at("schema") != "robustbf.bench" || doc.at("schema_version") != kReportSchemaVersion) {
    throw std::invalid_argument("not a version-1 bench report");
  }
  BenchReport report;
  for (const auto& j : doc.at("rows")) {
    BenchRow r;
    r.filter = j.at("filter").get<std::string>();
    r.workload = j.at("workload").get<std::string>();
    r.n = j.at("n").get<std::uint64_t>();
    r.epsilon = j.at("epsilon").get<double>();
    r.variant = j.at("variant").get<std::string>();
    r.k = j.at("k").get<std::uint32_t>();
    r.x = optional_from_json(j.at("X"));
    r.y = optional_from_json(j.at("Y"));
    r.beta = optional_from_json(j.at("beta"));
    r.memory_bits = j.at("memory_bits").get<std::uint64_t>();
    r.bits_per_element = j.at("bits_per_element").get<double>();
    r.ops = j.at("ops").get<std::uint64_t>();
    r.seconds = j.at("seconds").get<double>();
    r.mops = j.at("mops").get<double>();
    r.fp_count = j.at("fp_count").get<std::uint64_t>();
    r.neg_queries = j.at("neg_queries").get<std::uint64_t>();
    r.fpp = j.at("fpp").get<double>();
    r.accuracy_pct = j.at("accuracy_pct").get<double>();
    r.probes = j.at("probes").get<std::uint64_t>();
    report.rows.push_back(std::move(r));
  }
  return report;
}

void emit_report(const BenchReport& report, ReportFormat format, const std::filesystem::path& path) {
  write_text(format == ReportFormat::csv ? to_csv(report) : to_json(report).dump(2) + "\n", path);
}

void emit_report(const HashSelectionReport& report, ReportFormat format, const std::filesystem::path& path) {
  write_text(format == ReportFormat::csv ? to_csv(report.flattened()) : to_json(report).dump(2) + "\n", path);
}

}  // namespace robustbf
