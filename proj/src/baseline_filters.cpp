#include "robustbf/baseline_filters.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

#include "robustbf/detail/byte_io.hpp"
#include "robustbf/geometry.hpp"
#include "robustbf/instrumentation.hpp"

namespace robustbf {

namespace {

constexpr std::uint64_t kMaxSnapshotHashCount = 4096;

void check_shape(std::uint64_t m, std::uint32_t k, const std::vector<HashSeed>& seeds) {
  if (m == 0 || k == 0) {
    throw std::invalid_argument("filter size and hash count must be positive");
  }
  if (seeds.size() != 2) {
    throw std::invalid_argument("double hashing needs exactly 2 seeds, got " + std::to_string(seeds.size()));
  }
}

struct BaselineHeader {
  std::uint64_t m;
  std::uint32_t k;
  HashVariant variant;
  std::vector<HashSeed> seeds;
  std::uint64_t inserted_count;
};

void write_baseline_header(std::ostream& out, detail::SnapshotTag tag, std::uint64_t m, std::uint32_t k,
                           HashVariant variant, std::span<const HashSeed> seeds, std::uint64_t inserted) {
  using detail::write_le;
  detail::write_header(out, tag);
  write_le<std::uint64_t>(out, m);
  write_le<std::uint32_t>(out, k);
  write_le<std::uint8_t>(out, static_cast<std::uint8_t>(variant.block_bytes()));
  for (const HashSeed s : seeds) {
    write_le<std::uint64_t>(out, s.value);
  }
  write_le<std::uint64_t>(out, inserted);
}

BaselineHeader read_baseline_header(std::istream& in, detail::SnapshotTag tag) {
  using detail::read_le;
  detail::read_header(in, tag);
  const auto m = read_le<std::uint64_t>(in);
  const auto k = read_le<std::uint32_t>(in);
  if (m == 0 || k == 0 || k > kMaxSnapshotHashCount) {
    throw SnapshotError("snapshot filter shape is invalid");
  }
  const auto block_bytes = read_le<std::uint8_t>(in);
  if (block_bytes < HashVariant::kMinBlockBytes || block_bytes > HashVariant::kMaxBlockBytes) {
    throw SnapshotError("snapshot hash variant is invalid");
  }
  std::vector<HashSeed> seeds(2);
  for (HashSeed& s : seeds) {
    s.value = read_le<std::uint64_t>(in);
  }
  const auto inserted = read_le<std::uint64_t>(in);
  return BaselineHeader{m, k, HashVariant::from_block_bytes(block_bytes), std::move(seeds), inserted};
}

}  // namespace

// ---------------------------------------------------------------------------
// StandardBloomFilter

StandardBloomFilter::StandardBloomFilter(std::uint64_t n, double epsilon, HashVariant variant)
    : StandardBloomFilter(optimal_bits(n, epsilon), optimal_hash_count(optimal_bits(n, epsilon), n), variant,
                          derive_seeds(2)) {}

StandardBloomFilter::StandardBloomFilter(std::uint64_t m, std::uint32_t k, HashVariant variant,
                                         std::vector<HashSeed> seeds)
    : m_{m}, k_{k}, variant_{variant}, seeds_{std::move(seeds)} {
  check_shape(m_, k_, seeds_);
  words_.assign((m_ + 63) / 64, 0);
}

void StandardBloomFilter::insert(std::string_view key) noexcept {
  detail::DoubleHashProbe probe{key, seed_pair(), variant_, m_};
  for (std::uint32_t i = 0; i < k_; ++i, probe.advance()) {
    ++instrumentation::probe_count;
    const std::uint64_t pos = probe.position();
    words_[pos >> 6] |= std::uint64_t{1} << (pos & 63);
  }
  ++inserted_count_;
}

bool StandardBloomFilter::contains(std::string_view key) const noexcept {
  detail::DoubleHashProbe probe{key, seed_pair(), variant_, m_};
  for (std::uint32_t i = 0; i < k_; ++i, probe.advance()) {
    ++instrumentation::probe_count;
    const std::uint64_t pos = probe.position();
    if ((words_[pos >> 6] & (std::uint64_t{1} << (pos & 63))) == 0) {
      return false;
    }
  }
  return true;
}

void StandardBloomFilter::clear() noexcept {
  std::fill(words_.begin(), words_.end(), 0);
  inserted_count_ = 0;
}

bool StandardBloomFilter::test_bit(std::uint64_t position) const {
  if (position >= m_) {
    throw std::out_of_range("bit position out of range");
  }
  return (words_[position >> 6] >> (position & 63)) & 1;
}

std::uint64_t StandardBloomFilter::popcount() const noexcept {
  std::uint64_t total = 0;
  for (const auto w : words_) {
    total += static_cast<std::uint64_t>(std::popcount(w));
  }
  return total;
}

void StandardBloomFilter::save(std::ostream& out) const {
  write_baseline_header(out, detail::SnapshotTag::standard, m_, k_, variant_, seeds_, inserted_count_);
  for (const auto w : words_) {
    detail::write_le<std::uint64_t>(out, w);
  }
  if (!out) {
    throw IoError("failed writing filter snapshot");
  }
}

StandardBloomFilter StandardBloomFilter::load(std::istream& in) {
  auto header = read_baseline_header(in, detail::SnapshotTag::standard);
  StandardBloomFilter f{header.m, header.k, header.variant, std::move(header.seeds)};
  f.inserted_count_ = header.inserted_count;
  for (auto& w : f.words_) {
    w = detail::read_le<std::uint64_t>(in);
  }
  if (const std::uint64_t tail = f.m_ % 64; tail != 0 && (f.words_.back() >> tail) != 0) {
    throw SnapshotError("snapshot sets bits beyond the filter size");
  }
  return f;
}

// ---------------------------------------------------------------------------
// CountingBloomFilter

CountingBloomFilter::CountingBloomFilter(std::uint64_t n, double epsilon, HashVariant variant)
    : CountingBloomFilter(optimal_bits(n, epsilon), optimal_hash_count(optimal_bits(n, epsilon), n), variant,
                          derive_seeds(2)) {}

CountingBloomFilter::CountingBloomFilter(std::uint64_t m, std::uint32_t k, HashVariant variant,
                                         std::vector<HashSeed> seeds)
    : m_{m}, k_{k}, variant_{variant}, seeds_{std::move(seeds)} {
  check_shape(m_, k_, seeds_);
  nibbles_.assign((m_ + 1) / 2, 0);
}

void CountingBloomFilter::insert(std::string_view key) noexcept {
  detail::DoubleHashProbe probe{key, seed_pair(), variant_, m_};
  for (std::uint32_t i = 0; i < k_; ++i, probe.advance()) {
    ++instrumentation::probe_count;
    const std::uint64_t pos = probe.position();
    if (const auto c = get(pos); c < kMaxCount) {
      set(pos, static_cast<std::uint8_t>(c + 1));
    }
  }
  ++inserted_count_;
}

bool CountingBloomFilter::contains(std::string_view key) const noexcept {
  detail::DoubleHashProbe probe{key, seed_pair(), variant_, m_};
  for (std::uint32_t i = 0; i < k_; ++i, probe.advance()) {
    ++instrumentation::probe_count;
    if (get(probe.position()) == 0) {
      return false;
    }
  }
  return true;
}

void CountingBloomFilter::remove(std::string_view key) noexcept {
  detail::DoubleHashProbe probe{key, seed_pair(), variant_, m_};
  for (std::uint32_t i = 0; i < k_; ++i, probe.advance()) {
    ++instrumentation::probe_count;
    const std::uint64_t pos = probe.position();
    if (const auto c = get(pos); c > 0 && c < kMaxCount) {
      set(pos, static_cast<std::uint8_t>(c - 1));
    }
  }
  if (inserted_count_ > 0) {
    --inserted_count_;
  }
}

void CountingBloomFilter::clear() noexcept {
  std::fill(nibbles_.begin(), nibbles_.end(), 0);
  inserted_count_ = 0;
}

std::uint8_t CountingBloomFilter::counter(std::uint64_t position) const {
  if (position >= m_) {
    throw std::out_of_range("counter position out of range");
  }
  return get(position);
}

bool CountingBloomFilter::all_zero() const noexcept {
  return std::all_of(nibbles_.begin(), nibbles_.end(), [](std::uint8_t b) { return b == 0; });
}

void CountingBloomFilter::save(std::ostream& out) const {
  write_baseline_header(out, detail::SnapshotTag::counting, m_, k_, variant_, seeds_, inserted_count_);
  out.write(reinterpret_cast<const char*>(nibbles_.data()), static_cast<std::streamsize>(nibbles_.size()));
  if (!out) {
    throw IoError("failed writing filter snapshot");
  }
}

CountingBloomFilter CountingBloomFilter::load(std::istream& in) {
  auto header = read_baseline_header(in, detail::SnapshotTag::counting);
  CountingBloomFilter f{header.m, header.k, header.variant, std::move(header.seeds)};
  f.inserted_count_ = header.inserted_count;
  in.read(reinterpret_cast<char*>(f.nibbles_.data()), static_cast<std::streamsize>(f.nibbles_.size()));
  if (!in) {
    throw SnapshotError("snapshot truncated");
  }
  if (f.m_ % 2 == 1 && (f.nibbles_.back() >> 4) != 0) {
    throw SnapshotError("snapshot sets a counter beyond the filter size");
  }
  return f;
}

}  // namespace robustbf
