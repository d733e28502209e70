#include "robustbf/workload.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>
#include <random>
#include <stdexcept>
#include <string_view>
#include <unordered_set>

#include "robustbf/errors.hpp"
#include "robustbf/hash.hpp"

namespace robustbf {

namespace {

// Separates the random streams of the corpus and of each query kind.
constexpr std::uint64_t kCorpusStream = 0x636f72707573ULL;
constexpr std::uint64_t kQueryStream = 0x7175657279ULL;

std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t stream) {
  return std::mt19937_64{splitmix64(seed ^ splitmix64(stream))};
}

// Uniform in [0, bound) by multiply-shift; platform independent, unlike
// std::uniform_int_distribution.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t bound) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(rng()) * bound) >> 64);
}

template <typename T>
void shuffle_together(std::vector<std::string>& a, std::vector<T>& b, std::mt19937_64& rng) {
  for (std::size_t i = a.size(); i > 1; --i) {
    const std::size_t j = bounded(rng, i);
    std::swap(a[i - 1], a[j]);
    std::swap(b[i - 1], b[j]);
  }
}

std::vector<std::string> distinct_partition_b(std::size_t count, std::mt19937_64& rng) {
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(count);
  std::vector<std::string> out;
  out.reserve(count);
  while (out.size() < count) {
    const std::uint64_t v = rng() | kPartitionBit;
    if (seen.insert(v).second) {
      out.push_back(format_key(v));
    }
  }
  return out;
}

}  // namespace

std::string_view to_string(QueryKind kind) noexcept {
  switch (kind) {
    case QueryKind::same: return "same";
    case QueryKind::mixed: return "mixed";
    case QueryKind::disjoint: return "disjoint";
    case QueryKind::random: return "random";
  }
  return "same";
}

std::optional<QueryKind> parse_query_kind(std::string_view name) noexcept {
  for (const QueryKind kind : kAllQueryKinds) {
    if (name == to_string(kind)) {
      return kind;
    }
  }
  return std::nullopt;
}

std::string format_key(std::uint64_t value) {
  std::string out(kKeyWidth, '0');
  for (std::size_t i = kKeyWidth; i > 0 && value != 0; --i) {
    out[i - 1] = static_cast<char>('0' + value % 10);
    value /= 10;
  }
  return out;
}

std::size_t QuerySet::negatives() const noexcept {
  return static_cast<std::size_t>(std::count(truth.begin(), truth.end(), false));
}

KeyCorpus generate_corpus(std::size_t n, std::uint64_t seed) {
  if (n == 0) {
    throw std::invalid_argument("corpus size must be at least 1");
  }
  auto rng = make_rng(seed, kCorpusStream);
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(n);
  KeyCorpus corpus;
  corpus.generator_seed = seed;
  corpus.universe_tag = 'A';
  corpus.keys.reserve(n);
  while (corpus.keys.size() < n) {
    const std::uint64_t v = rng() & ~kPartitionBit;
    if (seen.insert(v).second) {
      corpus.keys.push_back(format_key(v));
    }
  }
  return corpus;
}

QuerySet make_query_set(QueryKind kind, const KeyCorpus& corpus, std::size_t size, std::uint64_t seed,
                        double mix_ratio) {
  if (size == 0) {
    throw std::invalid_argument("query set size must be at least 1");
  }
  auto rng = make_rng(seed, kQueryStream + static_cast<std::uint64_t>(kind));
  QuerySet qs;
  qs.kind = kind;

  switch (kind) {
    case QueryKind::same: {
      if (size != corpus.keys.size()) {
        throw std::invalid_argument("same-set size " + std::to_string(size) + " must equal corpus size " +
                                    std::to_string(corpus.keys.size()));
      }
      qs.queries = corpus.keys;
      qs.truth.assign(size, true);
      break;
    }
    case QueryKind::mixed: {
      if (!(mix_ratio > 0.0 && mix_ratio < 1.0)) {
        throw std::invalid_argument("mix ratio must lie in (0, 1)");
      }
      const auto members = static_cast<std::size_t>(std::llround(static_cast<double>(size) * mix_ratio));
      if (members > corpus.keys.size()) {
        throw std::invalid_argument("mixed set asks for " + std::to_string(members) + " members but the corpus has " +
                                    std::to_string(corpus.keys.size()));
      }
      // Partial Fisher-Yates over corpus indices: distinct members.
      std::vector<std::size_t> index(corpus.keys.size());
      for (std::size_t i = 0; i < index.size(); ++i) {
        index[i] = i;
      }
      qs.queries.reserve(size);
      for (std::size_t i = 0; i < members; ++i) {
        const std::size_t j = i + bounded(rng, index.size() - i);
        std::swap(index[i], index[j]);
        qs.queries.push_back(corpus.keys[index[i]]);
      }
      auto outsiders = distinct_partition_b(size - members, rng);
      std::move(outsiders.begin(), outsiders.end(), std::back_inserter(qs.queries));
      std::vector<char> labels(size, 0);
      std::fill_n(labels.begin(), members, 1);
      shuffle_together(qs.queries, labels, rng);
      qs.truth.assign(labels.begin(), labels.end());
      break;
    }
    case QueryKind::disjoint: {
      qs.queries = distinct_partition_b(size, rng);
      qs.truth.assign(size, false);
      break;
    }
    case QueryKind::random: {
      std::unordered_set<std::string_view> members(corpus.keys.begin(), corpus.keys.end());
      qs.queries.reserve(size);
      qs.truth.reserve(size);
      for (std::size_t i = 0; i < size; ++i) {
        qs.queries.push_back(format_key(rng()));
        qs.truth.push_back(members.contains(qs.queries.back()));
      }
      break;
    }
  }
  return qs;
}

void write_keys(const std::filesystem::path& path, const std::vector<std::string>& keys) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("cannot open " + path.string() + " for writing");
  }
  for (const auto& key : keys) {
    out << key << '\n';
  }
  if (!out) {
    throw IoError("failed writing " + path.string());
  }
}

std::vector<std::string> read_keys(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open " + path.string());
  }
  std::vector<std::string> keys;
  for (std::string line; std::getline(in, line);) {
    keys.push_back(std::move(line));
  }
  return keys;
}

void write_truth_bitmap(const std::filesystem::path& path, const std::vector<bool>& truth) {
  std::vector<unsigned char> bytes((truth.size() + 7) / 8, 0);
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (truth[i]) {
      bytes[i / 8] |= static_cast<unsigned char>(1U << (i % 8));
    }
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("cannot open " + path.string() + " for writing");
  }
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) {
    throw IoError("failed writing " + path.string());
  }
}

std::vector<bool> read_truth_bitmap(const std::filesystem::path& path, std::size_t count) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open " + path.string());
  }
  std::vector<unsigned char> bytes((count + 7) / 8, 0);
  in.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (in.gcount() != static_cast<std::streamsize>(bytes.size())) {
    throw IoError(path.string() + " holds fewer than " + std::to_string(count) + " truth bits");
  }
  std::vector<bool> truth(count);
  for (std::size_t i = 0; i < count; ++i) {
    truth[i] = (bytes[i / 8] >> (i % 8)) & 1U;
  }
  return truth;
}

}  // namespace robustbf
