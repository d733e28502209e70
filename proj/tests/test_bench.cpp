#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "robustbf/bench.hpp"
#include "robustbf/errors.hpp"
#include "robustbf/report.hpp"

using namespace robustbf;

namespace {

BenchConfig small_config(FilterKind kind, std::uint64_t n = 1'000) {
  BenchConfig c;
  c.filter = kind;
  c.n = n;
  c.epsilon = 0.001;
  c.seed = 5;
  return c;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

VariantRanking ranking(int index, bool eligible, double mops) {
  VariantRanking r;
  r.variant = HashVariant::from_index(index);
  r.eligible = eligible;
  r.lookup_mops = mops;
  return r;
}

}  // namespace

TEST_SUITE("bench") {
  TEST_CASE("config validation") {
    BenchConfig c;
    CHECK_NOTHROW(c.validate());
    c.epsilon = 1.0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c.epsilon = 0.01;
    c.repetitions = 0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c.repetitions = 1;
    c.n = 0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    CHECK(parse_filter_kind("sbf") == FilterKind::sbf);
    CHECK_FALSE(parse_filter_kind("cuckoo"));
  }

  TEST_CASE("smoke run bookkeeping") {
    for (const FilterKind kind : kAllFilterKinds) {
      const auto report = run_bench(small_config(kind));
      REQUIRE(report.rows.size() == 5);
      CHECK(report.rows[0].workload == "insert");
      CHECK(report.rows[0].ops == 1'000);
      CHECK(report.rows[0].variant == "H4");
      for (const auto& row : report.rows) {
        CHECK(row.filter == to_string(kind));
        CHECK(row.mops >= 0.0);
        CHECK(row.bits_per_element == doctest::Approx(static_cast<double>(row.memory_bits) / 1'000));
        CHECK(row.accuracy_pct == doctest::Approx(100.0 * (1.0 - row.fpp)).epsilon(1e-12));
      }
      CHECK(report.rows[1].workload == "same");
      CHECK(report.rows[1].fpp == 0.0);
      CHECK(report.rows[1].accuracy_pct == 100.0);
      CHECK(report.rows[1].neg_queries == 0);
      CHECK(report.rows[2].neg_queries == 500);
      CHECK(report.rows[3].neg_queries == 1'000);
      CHECK(report.rows[0].x.has_value() == (kind == FilterKind::robustbf));
    }
  }

  TEST_CASE("probe accounting: the 2D filter probes half as often as the standard one") {
    const auto robust = run_bench(small_config(FilterKind::robustbf, 100'000));
    const auto sbf = run_bench(small_config(FilterKind::sbf, 100'000));
    CHECK(robust.rows[0].k == 5);
    CHECK(sbf.rows[0].k == 10);
    CHECK(robust.rows[0].probes == 5 * 100'000);
    CHECK(sbf.rows[0].probes == 10 * 100'000);
    CHECK(static_cast<double>(robust.rows[0].probes) / static_cast<double>(sbf.rows[0].probes) == 0.5);
    for (std::size_t i = 1; i < robust.rows.size(); ++i) {
      CHECK(robust.rows[i].probes <= 5 * robust.rows[i].ops);
    }
    // Same-set lookups never short-circuit.
    CHECK(robust.rows[1].probes == 5 * robust.rows[1].ops);
  }

  TEST_CASE("lookup bench rejects missing truth labels") {
    const auto config = small_config(FilterKind::sbf);
    const auto corpus = generate_corpus(config.n, config.seed);
    auto inserted = run_insert_bench(config, corpus);
    auto qs = make_query_set(QueryKind::disjoint, corpus, 100, 1);
    qs.truth.clear();
    CHECK_THROWS_AS(run_lookup_bench(config, inserted.filter, qs), std::invalid_argument);
  }

  TEST_CASE("repetitions average timing but keep counts") {
    auto config = small_config(FilterKind::cbf, 2'000);
    config.repetitions = 3;
    const auto a = run_bench(config);
    config.repetitions = 1;
    const auto b = run_bench(config);
    REQUIRE(a.rows.size() == b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
      CHECK(same_non_timing_fields(a.rows[i], b.rows[i]));
    }
  }

  TEST_CASE("geometry underflow propagates") {
    auto config = small_config(FilterKind::robustbf, 10);
    CHECK_THROWS_AS(run_bench(config), GeometryUnderflowError);
  }

  TEST_CASE("recommendation rule") {
    std::vector<VariantRanking> rs{ranking(1, true, 3.0), ranking(2, false, 9.0), ranking(3, true, 5.0),
                                   ranking(4, true, 5.0)};
    CHECK(recommend_variant(rs) == HashVariant::from_index(3));
    rs[2].eligible = false;
    CHECK(recommend_variant(rs) == HashVariant::from_index(4));
    for (auto& r : rs) {
      r.eligible = false;
    }
    CHECK_FALSE(recommend_variant(rs));
  }

  TEST_CASE("hash selection covers all nine variants") {
    auto config = small_config(FilterKind::robustbf, 5'000);
    const auto report = run_hash_selection(config);
    REQUIRE(report.variants.size() == 9);
    for (std::size_t i = 0; i < 9; ++i) {
      const auto& v = report.variants[i];
      CHECK(v.variant.index() == static_cast<int>(i) + 1);
      REQUIRE(v.rows.size() == 5);
      CHECK(v.eligible == (v.max_fpp <= config.epsilon));
      for (const auto& row : v.rows) {
        CHECK(row.variant == v.variant.label());
      }
    }
    if (report.recommended) {
      const auto& chosen = report.variants[static_cast<std::size_t>(report.recommended->index() - 1)];
      CHECK(chosen.eligible);
    }
    CHECK(report.flattened().rows.size() == 45);
  }

  TEST_CASE("empty report is a header-only CSV") {
    CHECK(to_csv(BenchReport{}) == std::string{csv_header()} + "\n");
  }

  TEST_CASE("CSV rows follow the fixed header") {
    const auto report = run_bench(small_config(FilterKind::sbf));
    const auto csv = to_csv(report);
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    CHECK(line == csv_header());
    std::getline(in, line);
    CHECK(line.rfind("sbf,insert,1000,0.001,H4,10,,,,", 0) == 0);
    CHECK(std::count(line.begin(), line.end(), ',') == 17);
  }

  TEST_CASE("JSON report round-trips through a generic parser") {
    const auto report = run_bench(small_config(FilterKind::robustbf));
    const std::string text = to_json(report).dump();
    const auto parsed = nlohmann::json::parse(text);
    CHECK(parsed["schema_version"] == kReportSchemaVersion);
    const auto back = bench_report_from_json(parsed);
    REQUIRE(back.rows.size() == report.rows.size());
    for (std::size_t i = 0; i < back.rows.size(); ++i) {
      CHECK(same_non_timing_fields(back.rows[i], report.rows[i]));
      CHECK(back.rows[i].seconds == report.rows[i].seconds);
      CHECK(back.rows[i].mops == report.rows[i].mops);
    }
  }

  TEST_CASE("identical seeds reproduce every non-timing field") {
    for (const FilterKind kind : kAllFilterKinds) {
      const auto a = run_bench(small_config(kind, 20'000));
      const auto b = run_bench(small_config(kind, 20'000));
      REQUIRE(a.rows.size() == b.rows.size());
      for (std::size_t i = 0; i < a.rows.size(); ++i) {
        CHECK(same_non_timing_fields(a.rows[i], b.rows[i]));
      }
    }
  }

  TEST_CASE("emit_report writes files and reports unwritable paths") {
    const auto dir = std::filesystem::temp_directory_path() / "robustbf_bench_test";
    std::filesystem::create_directories(dir);
    const auto report = run_bench(small_config(FilterKind::cbf));
    emit_report(report, ReportFormat::csv, dir / "r.csv");
    CHECK(read_file(dir / "r.csv") == to_csv(report));
    emit_report(report, ReportFormat::json, dir / "r.json");
    CHECK(bench_report_from_json(nlohmann::json::parse(read_file(dir / "r.json"))).rows.size() == report.rows.size());
    CHECK_THROWS_AS(emit_report(report, ReportFormat::csv, dir / "missing" / "r.csv"), IoError);
    std::filesystem::remove_all(dir);
    CHECK(parse_report_format("csv") == ReportFormat::csv);
    CHECK_FALSE(parse_report_format("xml"));
  }
}
