// robustbf: benchmark harness for the 2D Bloom filter and its baselines.
//
//   robustbf bench --filter robustbf --n 100000 --epsilon 0.001 --workload all --format csv --out -
//   robustbf hash-select --n 100000 --epsilon 0.001 --seed 1 --out ranking.json
//   robustbf generate --n 1000 --seed 1 --out data/

#include <exception>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "robustbf/bench.hpp"
#include "robustbf/report.hpp"
#include "robustbf/workload.hpp"

namespace {

using namespace robustbf;

struct CommonOptions {
  std::uint64_t n{100'000};
  double epsilon{0.001};
  std::uint64_t seed{1};
  unsigned reps{1};
  std::size_t query_size{0};
  double mix_ratio{kDefaultMixRatio};
  std::string format{"json"};
  std::string out{"-"};
  std::string variant;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--n", o.n, "Number of inserted keys")->check(CLI::PositiveNumber);
  cmd->add_option("--epsilon", o.epsilon, "Target false-positive probability")->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--seed", o.seed, "Workload generator seed");
  cmd->add_option("--reps", o.reps, "Timed repetitions per phase")->check(CLI::PositiveNumber);
  cmd->add_option("--query-size", o.query_size, "Queries per non-same workload (default n)");
  cmd->add_option("--mix-ratio", o.mix_ratio, "Member fraction of the mixed workload")->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--format", o.format, "Report format")->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--out", o.out, "Output path, - for stdout");
  cmd->add_option("--variant", o.variant, "Hash variant H1..H9 (default H4)");
}

BenchConfig to_config(const CommonOptions& o) {
  BenchConfig config;
  config.n = o.n;
  config.epsilon = o.epsilon;
  config.seed = o.seed;
  config.repetitions = o.reps;
  config.query_size = o.query_size;
  config.mix_ratio = o.mix_ratio;
  if (!o.variant.empty()) {
    config.variant = HashVariant::parse(o.variant);
    if (!config.variant) {
      throw std::invalid_argument("unknown hash variant '" + o.variant + "'");
    }
  }
  config.validate();
  return config;
}

int run_bench_command(const CommonOptions& o, const std::string& filter, const std::string& workload) {
  BenchConfig config = to_config(o);
  if (workload != "all") {
    config.workloads = {*parse_query_kind(workload)};
  }
  std::vector<FilterKind> kinds;
  if (filter == "all") {
    kinds.assign(std::begin(kAllFilterKinds), std::end(kAllFilterKinds));
  } else {
    kinds.push_back(*parse_filter_kind(filter));
  }
  BenchReport report;
  for (const FilterKind kind : kinds) {
    config.filter = kind;
    BenchReport part = run_bench(config);
    report.rows.insert(report.rows.end(), part.rows.begin(), part.rows.end());
  }
  emit_report(report, *parse_report_format(o.format), o.out);
  return 0;
}

int run_hash_select_command(const CommonOptions& o) {
  const HashSelectionReport report = run_hash_selection(to_config(o));
  emit_report(report, *parse_report_format(o.format), o.out);
  std::cerr << "recommended variant: " << (report.recommended ? report.recommended->label() : std::string{"none"})
            << '\n';
  return 0;
}

int run_generate_command(const CommonOptions& o) {
  const BenchConfig config = to_config(o);
  const std::filesystem::path dir = o.out == "-" ? std::filesystem::path{"."} : std::filesystem::path{o.out};
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw IoError("cannot create " + dir.string() + ": " + ec.message());
  }
  const KeyCorpus corpus = generate_corpus(config.n, config.seed);
  write_keys(dir / "corpus.txt", corpus.keys);
  for (const QueryKind kind : kAllQueryKinds) {
    const std::size_t size = kind == QueryKind::same ? corpus.keys.size() : config.effective_query_size();
    const QuerySet qs = make_query_set(kind, corpus, size, config.seed, config.mix_ratio);
    const std::string stem{to_string(kind)};
    write_keys(dir / (stem + ".txt"), qs.queries);
    write_truth_bitmap(dir / (stem + ".truth"), qs.truth);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"robustbf: 2D Bloom filter benchmark harness"};
  app.require_subcommand(1);

  CommonOptions bench_opts;
  std::string filter{"robustbf"};
  std::string workload{"all"};
  auto* bench = app.add_subcommand("bench", "Insert and lookup benchmark for one filter");
  add_common(bench, bench_opts);
  bench->add_option("--filter", filter, "Filter kind")->check(CLI::IsMember({"robustbf", "sbf", "cbf", "all"}));
  bench->add_option("--workload", workload, "Query workload")
      ->check(CLI::IsMember({"same", "mixed", "disjoint", "random", "all"}));

  CommonOptions select_opts;
  auto* select = app.add_subcommand("hash-select", "Rank hash variants H1..H9 inside the 2D filter");
  add_common(select, select_opts);

  CommonOptions generate_opts;
  generate_opts.out = ".";
  auto* generate = app.add_subcommand("generate", "Write a corpus and the four query sets with truth bitmaps");
  add_common(generate, generate_opts);

  CLI11_PARSE(app, argc, argv);

  try {
    if (bench->parsed()) {
      return run_bench_command(bench_opts, filter, workload);
    }
    if (select->parsed()) {
      return run_hash_select_command(select_opts);
    }
    return run_generate_command(generate_opts);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
