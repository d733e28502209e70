#include "robustbf/bench.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

#include "robustbf/instrumentation.hpp"

namespace robustbf {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

double mops_of(std::uint64_t ops, double seconds) {
  return seconds > 0.0 ? static_cast<double>(ops) / (1e6 * seconds) : 0.0;
}

BenchRow describe(const BenchConfig& config, const AnyFilter& filter) {
  BenchRow row;
  row.filter = std::string{to_string(config.filter)};
  row.n = config.n;
  row.epsilon = config.epsilon;
  std::visit(
      [&row](const auto& f) {
        using F = std::decay_t<decltype(f)>;
        row.variant = f.variant().label();
        row.memory_bits = f.memory_bits();
        if constexpr (std::is_same_v<F, RobustBloomFilter>) {
          const auto& g = f.geometry();
          row.k = g.k;
          row.x = g.x;
          row.y = g.y;
          row.beta = g.beta;
        } else {
          row.k = f.hash_count();
        }
      },
      filter);
  row.bits_per_element = static_cast<double>(row.memory_bits) / static_cast<double>(config.n);
  return row;
}

}  // namespace

std::string_view to_string(FilterKind kind) noexcept {
  switch (kind) {
    case FilterKind::robustbf: return "robustbf";
    case FilterKind::sbf: return "sbf";
    case FilterKind::cbf: return "cbf";
  }
  return "robustbf";
}

std::optional<FilterKind> parse_filter_kind(std::string_view name) noexcept {
  for (const FilterKind kind : kAllFilterKinds) {
    if (name == to_string(kind)) {
      return kind;
    }
  }
  return std::nullopt;
}

void BenchConfig::validate() const {
  if (n == 0) {
    throw std::invalid_argument("n must be at least 1");
  }
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw std::invalid_argument("epsilon must lie in (0, 1)");
  }
  if (repetitions == 0) {
    throw std::invalid_argument("repetitions must be at least 1");
  }
  if (!(mix_ratio > 0.0 && mix_ratio < 1.0)) {
    throw std::invalid_argument("mix ratio must lie in (0, 1)");
  }
}

bool same_non_timing_fields(const BenchRow& a, const BenchRow& b) noexcept {
  return a.filter == b.filter && a.workload == b.workload && a.n == b.n && a.epsilon == b.epsilon &&
         a.variant == b.variant && a.k == b.k && a.x == b.x && a.y == b.y && a.beta == b.beta &&
         a.memory_bits == b.memory_bits && a.bits_per_element == b.bits_per_element && a.ops == b.ops &&
         a.fp_count == b.fp_count && a.neg_queries == b.neg_queries && a.fpp == b.fpp &&
         a.accuracy_pct == b.accuracy_pct && a.probes == b.probes;
}

AnyFilter make_filter(FilterKind kind, std::uint64_t n, double epsilon, HashVariant variant) {
  switch (kind) {
    case FilterKind::robustbf: return RobustBloomFilter::for_capacity(n, epsilon, variant);
    case FilterKind::sbf: return StandardBloomFilter{n, epsilon, variant};
    case FilterKind::cbf: return CountingBloomFilter{n, epsilon, variant};
  }
  throw std::invalid_argument("unknown filter kind");
}

InsertOutcome run_insert_bench(const BenchConfig& config, const KeyCorpus& corpus) {
  config.validate();
  const HashVariant variant = config.variant.value_or(default_variant());
  AnyFilter filter = make_filter(config.filter, config.n, config.epsilon, variant);

  double total_seconds = 0.0;
  std::uint64_t probes = 0;
  for (unsigned rep = 0; rep < config.repetitions; ++rep) {
    if (rep > 0) {
      std::visit([](auto& f) { f.clear(); }, filter);
    }
    const std::uint64_t probes_before = instrumentation::probe_count;
    const auto start = Clock::now();
    std::visit(
        [&corpus](auto& f) {
          for (const auto& key : corpus.keys) {
            f.insert(key);
          }
        },
        filter);
    total_seconds += elapsed_seconds(start);
    probes = instrumentation::probe_count - probes_before;
  }

  BenchRow row = describe(config, filter);
  row.workload = "insert";
  row.ops = corpus.keys.size();
  row.seconds = total_seconds / config.repetitions;
  row.mops = mops_of(row.ops, row.seconds);
  row.probes = probes;
  return InsertOutcome{std::move(row), std::move(filter)};
}

BenchRow run_lookup_bench(const BenchConfig& config, const AnyFilter& filter, const QuerySet& queries) {
  config.validate();
  if (queries.truth.size() != queries.queries.size()) {
    throw std::invalid_argument("query set has " + std::to_string(queries.truth.size()) + " truth labels for " +
                                std::to_string(queries.queries.size()) + " queries");
  }

  double total_seconds = 0.0;
  std::uint64_t fp = 0;
  std::uint64_t probes = 0;
  for (unsigned rep = 0; rep < config.repetitions; ++rep) {
    std::uint64_t false_positives = 0;
    const std::uint64_t probes_before = instrumentation::probe_count;
    const auto start = Clock::now();
    std::visit(
        [&](const auto& f) {
          for (std::size_t i = 0; i < queries.queries.size(); ++i) {
            if (f.contains(queries.queries[i]) && !queries.truth[i]) {
              ++false_positives;
            }
          }
        },
        filter);
    total_seconds += elapsed_seconds(start);
    probes = instrumentation::probe_count - probes_before;
    fp = false_positives;
  }

  BenchRow row = describe(config, filter);
  row.workload = std::string{to_string(queries.kind)};
  row.ops = queries.queries.size();
  row.seconds = total_seconds / config.repetitions;
  row.mops = mops_of(row.ops, row.seconds);
  row.fp_count = fp;
  row.neg_queries = queries.negatives();
  row.fpp = row.neg_queries > 0 ? static_cast<double>(fp) / static_cast<double>(row.neg_queries) : 0.0;
  row.accuracy_pct = 100.0 * (1.0 - row.fpp);
  row.probes = probes;
  return row;
}

BenchReport run_bench(const BenchConfig& config) {
  config.validate();
  const KeyCorpus corpus = generate_corpus(config.n, config.seed);
  BenchReport report;
  InsertOutcome inserted = run_insert_bench(config, corpus);
  report.rows.push_back(std::move(inserted.row));
  for (const QueryKind kind : config.workloads) {
    const std::size_t size = kind == QueryKind::same ? corpus.keys.size() : config.effective_query_size();
    const QuerySet qs = make_query_set(kind, corpus, size, config.seed, config.mix_ratio);
    report.rows.push_back(run_lookup_bench(config, inserted.filter, qs));
  }
  return report;
}

BenchReport HashSelectionReport::flattened() const {
  BenchReport out;
  for (const auto& v : variants) {
    out.rows.insert(out.rows.end(), v.rows.begin(), v.rows.end());
  }
  return out;
}

std::optional<HashVariant> recommend_variant(std::span<const VariantRanking> rankings) {
  const VariantRanking* best = nullptr;
  for (const auto& r : rankings) {
    if (!r.eligible) {
      continue;
    }
    if (best == nullptr || r.lookup_mops > best->lookup_mops ||
        (r.lookup_mops == best->lookup_mops && r.variant.block_bytes() < best->variant.block_bytes())) {
      best = &r;
    }
  }
  return best == nullptr ? std::nullopt : std::optional<HashVariant>{best->variant};
}

HashSelectionReport run_hash_selection(const BenchConfig& config) {
  config.validate();
  const KeyCorpus corpus = generate_corpus(config.n, config.seed);
  std::vector<QuerySet> query_sets;
  for (const QueryKind kind : config.workloads) {
    const std::size_t size = kind == QueryKind::same ? corpus.keys.size() : config.effective_query_size();
    query_sets.push_back(make_query_set(kind, corpus, size, config.seed, config.mix_ratio));
  }

  HashSelectionReport report;
  report.n = config.n;
  report.epsilon = config.epsilon;
  for (const HashVariant variant : HashVariant::all()) {
    BenchConfig vc = config;
    vc.filter = FilterKind::robustbf;
    vc.variant = variant;

    VariantRanking ranking;
    ranking.variant = variant;
    InsertOutcome inserted = run_insert_bench(vc, corpus);
    ranking.rows.push_back(std::move(inserted.row));

    std::uint64_t lookup_ops = 0;
    double lookup_seconds = 0.0;
    ranking.eligible = true;
    for (const QuerySet& qs : query_sets) {
      BenchRow row = run_lookup_bench(vc, inserted.filter, qs);
      lookup_ops += row.ops;
      lookup_seconds += row.seconds;
      ranking.max_fpp = std::max(ranking.max_fpp, row.fpp);
      if (qs.kind == QueryKind::mixed) {
        ranking.mixed_fpp = row.fpp;
      }
      if (row.fpp > config.epsilon) {
        ranking.eligible = false;
      }
      ranking.rows.push_back(std::move(row));
    }
    ranking.lookup_mops = mops_of(lookup_ops, lookup_seconds);
    report.variants.push_back(std::move(ranking));
  }
  report.recommended = recommend_variant(report.variants);
  return report;
}

}  // namespace robustbf
