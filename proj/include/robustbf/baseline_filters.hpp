#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <string_view>
#include <vector>

#include "robustbf/hash.hpp"

namespace robustbf {

namespace detail {

// Kirsch-Mitzenmacher probe sequence g_i = (h1 + i * h2) mod m over two
// digests of the same key. The step is never zero.
class DoubleHashProbe {
 public:
  DoubleHashProbe(std::string_view key, std::span<const HashSeed, 2> seeds, HashVariant variant,
                  std::uint64_t m) noexcept
      : m_{m},
        pos_{hash(key, seeds[0], variant).value % m},
        step_{m > 1 ? 1 + hash(key, seeds[1], variant).value % (m - 1) : 0} {}

  std::uint64_t position() const noexcept { return pos_; }
  void advance() noexcept {
    pos_ += step_;
    if (pos_ >= m_) {
      pos_ -= m_;
    }
  }

 private:
  std::uint64_t m_;
  std::uint64_t pos_;
  std::uint64_t step_;
};

}  // namespace detail

/// Classic single-bit-array Bloom filter, m = optimal_bits(n, epsilon) and
/// k = optimal_hash_count(m, n).
class StandardBloomFilter {
 public:
  StandardBloomFilter(std::uint64_t n, double epsilon, HashVariant variant = default_variant());
  /// Explicit size; throws std::invalid_argument if m or k is zero.
  StandardBloomFilter(std::uint64_t m, std::uint32_t k, HashVariant variant, std::vector<HashSeed> seeds);

  void insert(std::string_view key) noexcept;
  bool contains(std::string_view key) const noexcept;
  void clear() noexcept;

  std::uint64_t bit_count() const noexcept { return m_; }
  std::uint32_t hash_count() const noexcept { return k_; }
  std::uint64_t memory_bits() const noexcept { return m_; }
  HashVariant variant() const noexcept { return variant_; }
  std::span<const HashSeed> seeds() const noexcept { return seeds_; }
  std::uint64_t inserted_count() const noexcept { return inserted_count_; }
  bool test_bit(std::uint64_t position) const;
  std::uint64_t popcount() const noexcept;

  void save(std::ostream& out) const;
  static StandardBloomFilter load(std::istream& in);

  friend bool operator==(const StandardBloomFilter&, const StandardBloomFilter&) = default;

 private:
  std::span<const HashSeed, 2> seed_pair() const noexcept { return std::span<const HashSeed, 2>{seeds_.data(), 2}; }

  std::uint64_t m_;
  std::uint32_t k_;
  HashVariant variant_;
  std::vector<HashSeed> seeds_;
  std::vector<std::uint64_t> words_;
  std::uint64_t inserted_count_{0};
};

/// Counting Bloom filter with m packed 4-bit counters (memory 4m bits).
/// Counters saturate at 15 and are never decremented once saturated.
class CountingBloomFilter {
 public:
  static constexpr std::uint8_t kMaxCount = 15;
  static constexpr std::uint32_t kCounterBits = 4;

  CountingBloomFilter(std::uint64_t n, double epsilon, HashVariant variant = default_variant());
  CountingBloomFilter(std::uint64_t m, std::uint32_t k, HashVariant variant, std::vector<HashSeed> seeds);

  void insert(std::string_view key) noexcept;
  /// True iff all k counters are non-zero.
  bool contains(std::string_view key) const noexcept;
  /// Decrements the k counters, skipping zero and saturated ones. Only remove
  /// keys that were inserted.
  void remove(std::string_view key) noexcept;
  void clear() noexcept;

  std::uint64_t counter_count() const noexcept { return m_; }
  std::uint32_t hash_count() const noexcept { return k_; }
  std::uint64_t memory_bits() const noexcept { return m_ * kCounterBits; }
  HashVariant variant() const noexcept { return variant_; }
  std::span<const HashSeed> seeds() const noexcept { return seeds_; }
  std::uint64_t inserted_count() const noexcept { return inserted_count_; }
  std::uint8_t counter(std::uint64_t position) const;
  bool all_zero() const noexcept;

  void save(std::ostream& out) const;
  static CountingBloomFilter load(std::istream& in);

  friend bool operator==(const CountingBloomFilter&, const CountingBloomFilter&) = default;

 private:
  std::span<const HashSeed, 2> seed_pair() const noexcept { return std::span<const HashSeed, 2>{seeds_.data(), 2}; }
  std::uint8_t get(std::uint64_t position) const noexcept {
    return static_cast<std::uint8_t>((nibbles_[position >> 1] >> ((position & 1) * 4)) & 0x0F);
  }
  void set(std::uint64_t position, std::uint8_t value) noexcept {
    const unsigned shift = (position & 1) * 4;
    auto& byte = nibbles_[position >> 1];
    byte = static_cast<std::uint8_t>((byte & ~(0x0F << shift)) | (value << shift));
  }

  std::uint64_t m_;
  std::uint32_t k_;
  HashVariant variant_;
  std::vector<HashSeed> seeds_;
  std::vector<std::uint8_t> nibbles_;
  std::uint64_t inserted_count_{0};
};

}  // namespace robustbf
