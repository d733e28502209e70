#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "robustbf/baseline_filters.hpp"
#include "robustbf/hash.hpp"
#include "robustbf/two_d_bloom_filter.hpp"
#include "robustbf/workload.hpp"

namespace robustbf {

enum class FilterKind { robustbf, sbf, cbf };

std::string_view to_string(FilterKind kind) noexcept;
std::optional<FilterKind> parse_filter_kind(std::string_view name) noexcept;
inline constexpr FilterKind kAllFilterKinds[] = {FilterKind::robustbf, FilterKind::sbf, FilterKind::cbf};

struct BenchConfig {
  FilterKind filter{FilterKind::robustbf};
  std::uint64_t n{100'000};
  double epsilon{0.001};
  std::vector<QueryKind> workloads{std::begin(kAllQueryKinds), std::end(kAllQueryKinds)};
  std::size_t query_size{0};  // 0 means n
  std::uint64_t seed{1};
  std::optional<HashVariant> variant;
  unsigned repetitions{1};
  double mix_ratio{kDefaultMixRatio};

  /// Throws std::invalid_argument for n == 0, epsilon outside (0, 1),
  /// repetitions == 0 or mix_ratio outside (0, 1).
  void validate() const;
  std::size_t effective_query_size() const noexcept { return query_size == 0 ? n : query_size; }
};

/// One (filter, workload) measurement. Geometry columns are empty for the
/// one-dimensional baselines. `workload` is "insert" for the insertion phase.
struct BenchRow {
  std::string filter;
  std::string workload;
  std::uint64_t n{0};
  double epsilon{0.0};
  std::string variant;
  std::uint32_t k{0};
  std::optional<std::uint32_t> x;
  std::optional<std::uint32_t> y;
  std::optional<std::uint32_t> beta;
  std::uint64_t memory_bits{0};
  double bits_per_element{0.0};
  std::uint64_t ops{0};
  double seconds{0.0};  // mean over repetitions
  double mops{0.0};
  std::uint64_t fp_count{0};
  std::uint64_t neg_queries{0};
  double fpp{0.0};
  double accuracy_pct{100.0};
  std::uint64_t probes{0};  // filter probes in one repetition
};

/// Field-by-field equality ignoring seconds and mops.
bool same_non_timing_fields(const BenchRow& a, const BenchRow& b) noexcept;

struct BenchReport {
  std::vector<BenchRow> rows;
};

using AnyFilter = std::variant<RobustBloomFilter, StandardBloomFilter, CountingBloomFilter>;

AnyFilter make_filter(FilterKind kind, std::uint64_t n, double epsilon, HashVariant variant = default_variant());

struct InsertOutcome {
  BenchRow row;
  AnyFilter filter;  // populated by the last repetition
};

/// Builds the filter and times inserting the whole corpus. Construction is
/// outside the timed region.
InsertOutcome run_insert_bench(const BenchConfig& config, const KeyCorpus& corpus);

/// Times the query loop and counts false positives against the query set's
/// ground truth. Throws std::invalid_argument when truth labels are missing.
BenchRow run_lookup_bench(const BenchConfig& config, const AnyFilter& filter, const QuerySet& queries);

/// Corpus generation, insertion, then one lookup row per configured workload.
BenchReport run_bench(const BenchConfig& config);

struct VariantRanking {
  HashVariant variant{default_variant()};
  std::vector<BenchRow> rows;  // insert row followed by lookup rows
  double max_fpp{0.0};
  double mixed_fpp{0.0};
  double lookup_mops{0.0};  // total lookup ops / total lookup seconds
  bool eligible{false};     // fpp <= epsilon on every workload
};

struct HashSelectionReport {
  std::uint64_t n{0};
  double epsilon{0.0};
  std::vector<VariantRanking> variants;
  std::optional<HashVariant> recommended;

  BenchReport flattened() const;
};

/// Among rankings with fpp <= epsilon on every workload, the highest lookup
/// MOPS; ties go to the smaller block size. Empty when none qualifies.
std::optional<HashVariant> recommend_variant(std::span<const VariantRanking> rankings);

/// Runs the 2D filter under each of H1..H9 on the configured workloads.
HashSelectionReport run_hash_selection(const BenchConfig& config);

}  // namespace robustbf
