// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "robustbf/baseline_filters.hpp"
#include "robustbf/bench.hpp"
#include "robustbf/geometry.hpp"
#include "robustbf/two_d_bloom_filter.hpp"
#include "robustbf/workload.hpp"
#include "support/oracles.hpp"

using namespace robustbf;

namespace {

constexpr double kEpsilon = 0.001;
constexpr std::uint64_t kDeskN = 1'000'000;

struct Outcome {
  bool pass{false};
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  std::function<Outcome()> run;
};

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

template <typename Filter>
std::size_t count_positive(const Filter& f, const std::vector<std::string>& keys) {
  std::size_t hits = 0;
  for (const auto& key : keys) {
    hits += f.contains(key);
  }
  return hits;
}

// Filters populated with the same 10^6-key corpus, shared by criteria 3-5.
struct DeskScale {
  KeyCorpus corpus = generate_corpus(kDeskN, 1);
  QuerySet disjoint = make_query_set(QueryKind::disjoint, corpus, kDeskN, 1);
  RobustBloomFilter robust = RobustBloomFilter::for_capacity(kDeskN, kEpsilon);
  StandardBloomFilter sbf{kDeskN, kEpsilon};
  CountingBloomFilter cbf{kDeskN, kEpsilon};

  DeskScale() {
    for (const auto& key : corpus.keys) {
      robust.insert(key);
      sbf.insert(key);
      cbf.insert(key);
    }
  }

  static DeskScale& get() {
    static DeskScale instance;
    return instance;
  }
};

Outcome sizing() {
  const auto m = optimal_bits(10'000'000, kEpsilon);
  const double mib = static_cast<double>(m) / 8.0 / (1024.0 * 1024.0);
  const double rel = std::abs(mib - 17.13942) / 17.13942;
  const bool pass = m + 1 >= 143'775'877 && m <= 143'775'878 && rel <= 1e-4;
  return {pass, fmt("m = %llu bits = %.5f MiB (rel. err %.2e vs 17.13942)", static_cast<unsigned long long>(m), mib, rel)};
}

Outcome geometry() {
  const auto g = derive_geometry(10'000'000, kEpsilon, 64);
  // Independent neighborhood scan around t = sqrt(floor(m / 122)).
  const double t = std::sqrt(std::floor(static_cast<double>(optimal_bits(10'000'000, kEpsilon)) / 122.0));
  const auto above = oracle::primes_above(t, 4);
  const auto below = oracle::primes_at_or_below(t, 3);
  const bool oracle_agrees = g.x == above[3] && g.y == below[2] && oracle::is_prime(g.beta);
  const bool pass = g.x == 1097 && g.y == 1061 && g.beta == 61 && g.k == 5 && oracle_agrees;
  return {pass, fmt("X=%u Y=%u beta=%u k=%u; trial-division scan gives X=%llu Y=%llu", g.x, g.y, g.beta, g.k,
                    static_cast<unsigned long long>(above[3]), static_cast<unsigned long long>(below[2]))};
}

Outcome no_false_negatives() {
  auto& d = DeskScale::get();
  const auto n = d.corpus.keys.size();
  const auto r = count_positive(d.robust, d.corpus.keys);
  const auto s = count_positive(d.sbf, d.corpus.keys);
  const auto c = count_positive(d.cbf, d.corpus.keys);
  return {r == n && s == n && c == n,
          fmt("same-set hits robustbf=%zu sbf=%zu cbf=%zu of %zu", r, s, c, n)};
}

Outcome baseline_fpp() {
  auto& d = DeskScale::get();
  const double s = static_cast<double>(count_positive(d.sbf, d.disjoint.queries)) / kDeskN;
  const double c = static_cast<double>(count_positive(d.cbf, d.disjoint.queries)) / kDeskN;
  const auto in_band = [](double v) { return v >= 0.0005 && v <= 0.002; };
  return {in_band(s) && in_band(c), fmt("disjoint FPP sbf=%.6f cbf=%.6f (band [0.0005, 0.002])", s, c)};
}

Outcome robust_fpp() {
  auto& d = DeskScale::get();
  const double r = static_cast<double>(count_positive(d.robust, d.disjoint.queries)) / kDeskN;
  const double s = static_cast<double>(count_positive(d.sbf, d.disjoint.queries)) / kDeskN;
  const double bits = static_cast<double>(d.robust.memory_bits()) / kDeskN;
  // Any membership filter storing n keys in b bits per key has FPP >= 2^-b.
  const double floor_any_filter = std::pow(2.0, -bits);
  return {r <= 1e-4 && r <= s / 5.0,
          fmt("disjoint FPP robustbf=%.6f (needs <= 1e-4 and <= sbf/5 = %.6f) at %.2f bits/element; "
              "lower bound for any filter at that size is %.6f",
              r, s / 5.0, bits, floor_any_filter)};
}

Outcome memory_ordering() {
  const auto robust = RobustBloomFilter::for_capacity(kDeskN, kEpsilon);
  const auto m = optimal_bits(kDeskN, kEpsilon);
  const CountingBloomFilter cbf{kDeskN, kEpsilon};
  const StandardBloomFilter sbf{kDeskN, kEpsilon};
  const double ratio = static_cast<double>(sbf.memory_bits()) / static_cast<double>(robust.memory_bits());
  // The claimed 10x reduction is not what the sizing rule produces; the
  // reproducible ratio sits near 2x.
  const bool ordered = robust.memory_bits() < m && m < cbf.memory_bits() && cbf.memory_bits() == 4 * sbf.memory_bits();
  const bool finding = ratio > 1.5 && ratio < 3.0;
  return {ordered && finding,
          fmt("robustbf=%llu < sbf=%llu < cbf=%llu bits; sbf/robustbf = %.3fx (claimed ~10x not reproduced)",
              static_cast<unsigned long long>(robust.memory_bits()), static_cast<unsigned long long>(m),
              static_cast<unsigned long long>(cbf.memory_bits()), ratio)};
}

Outcome delete_semantics() {
  auto robust = RobustBloomFilter::for_capacity(100'000, kEpsilon);
  robust.insert("singleton");
  robust.remove("singleton");
  bool robust_zero = true;
  for (const auto c : robust.cells()) {
    robust_zero = robust_zero && c == 0;
  }
  const bool robust_gone = !robust.contains("singleton");

  const auto corpus = generate_corpus(100'000, 2);
  CountingBloomFilter cbf{100'000, kEpsilon};
  for (const auto& key : corpus.keys) {
    cbf.insert(key);
  }
  bool saturated = false;
  for (std::uint64_t p = 0; p < cbf.counter_count() && !saturated; ++p) {
    saturated = cbf.counter(p) == CountingBloomFilter::kMaxCount;
  }
  for (const auto& key : corpus.keys) {
    cbf.remove(key);
  }
  const bool cbf_zero = cbf.all_zero();
  const auto cbf_hits = count_positive(cbf, corpus.keys);
  return {robust_zero && robust_gone && !saturated && cbf_zero && cbf_hits == 0,
          fmt("robustbf singleton zero=%d absent=%d; cbf 10^5 keys saturated=%d zero=%d hits-after-delete=%zu",
              robust_zero, robust_gone, saturated, cbf_zero, cbf_hits)};
}

Outcome toy_oracle() {
  const auto toy = FilterGeometry::custom(13, 11, 2);
  RobustBloomFilter f{toy};
  oracle::BitCube cube{13, 11, 61, std::vector<HashSeed>(f.seeds().begin(), f.seeds().end()), f.variant()};
  std::mt19937_64 rng(8);
  std::size_t mismatches = 0;
  std::size_t lookups = 0;
  for (int step = 0; step < 10'000; ++step) {
    const std::string key = "k" + std::to_string(rng() % 400);
    switch (rng() % 3) {
      case 0:
        f.insert(key);
        cube.insert(key);
        break;
      case 1:
        f.remove(key);
        cube.remove(key);
        break;
      default:
        ++lookups;
        mismatches += f.contains(key) != cube.lookup(key);
        break;
    }
  }
  for (std::uint32_t i = 0; i < 13; ++i) {
    for (std::uint32_t j = 0; j < 11; ++j) {
      mismatches += f.cell(i, j) != cube.cell(i, j);
    }
  }
  return {mismatches == 0, fmt("%zu mismatches over 10000 steps (%zu lookups) and 143 final cells", mismatches, lookups)};
}

Outcome hash_selection() {
  BenchConfig config;
  config.n = 100'000;
  config.epsilon = kEpsilon;
  config.seed = 3;
  const auto report = run_hash_selection(config);

  bool complete = report.variants.size() == 9;
  bool rule_ok = true;
  std::string table;
  for (const auto& v : report.variants) {
    complete = complete && v.rows.size() == 5;
    rule_ok = rule_ok && (v.mixed_fpp <= kEpsilon || !v.eligible);
    table += fmt(" %s:%.4f", v.variant.label().c_str(), v.max_fpp);
  }
  bool recommended_ok = false;
  if (report.recommended) {
    const auto& chosen = report.variants[static_cast<std::size_t>(report.recommended->index() - 1)];
    recommended_ok = chosen.eligible && chosen.max_fpp <= kEpsilon;
  }
  const bool h4_eligible = report.variants[3].eligible;
  return {complete && rule_ok && recommended_ok,
          fmt("9 variants ranked=%d; recommended=%s; H4 eligible=%d; max FPP per variant:", complete,
              report.recommended ? report.recommended->label().c_str() : "none", h4_eligible) +
              table};
}

Outcome determinism() {
  std::size_t rows = 0;
  std::size_t differing = 0;
  for (const FilterKind kind : kAllFilterKinds) {
    BenchConfig config;
    config.filter = kind;
    config.n = 100'000;
    config.seed = 9;
    const auto a = run_bench(config);
    const auto b = run_bench(config);
    rows += a.rows.size();
    if (a.rows.size() != b.rows.size()) {
      return {false, "row counts differ"};
    }
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
      differing += !same_non_timing_fields(a.rows[i], b.rows[i]);
    }
  }
  return {differing == 0, fmt("%zu rows compared, %zu differ in non-timing fields", rows, differing)};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "sizing: optimal_bits(1e7, 0.001)", sizing},
      {2, "geometry: derive_geometry(1e7, 0.001, 64)", geometry},
      {3, "no false negatives at n=1e6", no_false_negatives},
      {4, "SBF/CBF FPP calibration at n=1e6", baseline_fpp},
      {5, "robustBF FPP superiority at n=1e6", robust_fpp},
      {6, "memory ordering at n=1e6", memory_ordering},
      {7, "delete semantics", delete_semantics},
      {8, "toy-scale oracle equivalence", toy_oracle},
      {9, "hash-selection harness at n=1e5", hash_selection},
      {10, "determinism of non-timing fields", determinism},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome = {false, std::string{"exception: "} + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] AC%-2d %s (%.2fs): %s\n", outcome.pass ? "PASS" : "FAIL", c.id, c.name.c_str(), secs,
                outcome.detail.c_str());
    std::fflush(stdout);
    failures += !outcome.pass;
  }
  std::printf("%d of %zu acceptance criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
