#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace robustbf {

/// Query workloads.
///   same     - exactly the inserted set
///   mixed    - members of the inserted set blended with guaranteed non-members
///   disjoint - guaranteed non-members only
///   random   - uniform draws from the whole key universe
enum class QueryKind { same, mixed, disjoint, random };

std::string_view to_string(QueryKind kind) noexcept;
std::optional<QueryKind> parse_query_kind(std::string_view name) noexcept;
inline constexpr QueryKind kAllQueryKinds[] = {QueryKind::same, QueryKind::mixed, QueryKind::disjoint,
                                               QueryKind::random};

// Keys are 20-digit zero-padded decimal renderings of 64-bit values. The
// universe splits on the top bit: partition A (bit clear) feeds corpora,
// partition B (bit set) feeds guaranteed non-members.
inline constexpr std::size_t kKeyWidth = 20;
inline constexpr std::uint64_t kPartitionBit = std::uint64_t{1} << 63;

std::string format_key(std::uint64_t value);

struct KeyCorpus {
  std::vector<std::string> keys;
  std::uint64_t generator_seed{0};
  char universe_tag{'A'};
};

struct QuerySet {
  QueryKind kind{QueryKind::same};
  std::vector<std::string> queries;
  std::vector<bool> truth;  // truth[i]: queries[i] is in the corpus

  std::size_t negatives() const noexcept;
  std::size_t positives() const noexcept { return truth.size() - negatives(); }
};

/// n distinct keys from partition A; identical output for identical (n, seed).
/// Throws std::invalid_argument for n == 0.
KeyCorpus generate_corpus(std::size_t n, std::uint64_t seed);

inline constexpr double kDefaultMixRatio = 0.5;

/// Builds a query set with exact ground truth.
///   same:     size must equal the corpus size.
///   mixed:    round(size * mix_ratio) distinct corpus keys plus the rest from
///             partition B, shuffled; mix_ratio must lie in (0, 1).
///   disjoint: size distinct keys from partition B.
///   random:   size uniform 64-bit values; truth looked up against the corpus.
/// Throws std::invalid_argument on violated preconditions.
QuerySet make_query_set(QueryKind kind, const KeyCorpus& corpus, std::size_t size, std::uint64_t seed,
                        double mix_ratio = kDefaultMixRatio);

// Newline-delimited key files and packed truth bitmaps (bit i of byte i / 8,
// least significant first). All throw IoError on failure.
void write_keys(const std::filesystem::path& path, const std::vector<std::string>& keys);
std::vector<std::string> read_keys(const std::filesystem::path& path);
void write_truth_bitmap(const std::filesystem::path& path, const std::vector<bool>& truth);
std::vector<bool> read_truth_bitmap(const std::filesystem::path& path, std::size_t count);

}  // namespace robustbf
