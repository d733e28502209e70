#pragma once

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <limits>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "robustbf/detail/byte_io.hpp"
#include "robustbf/geometry.hpp"
#include "robustbf/hash.hpp"
#include "robustbf/instrumentation.hpp"

namespace robustbf {

/// Where one digest lands in a 2D filter: cell (row, col), bit `bit` of that cell.
struct CellAddress {
  std::uint32_t row{0};
  std::uint32_t col{0};
  std::uint32_t bit{0};
  std::uint64_t mask{0};  // 1 << bit

  friend constexpr bool operator==(const CellAddress&, const CellAddress&) = default;
};

/// row = h % X, col = h % Y, bit = h % beta.
constexpr CellAddress locate(Digest h, const FilterGeometry& g) noexcept {
  const auto bit = static_cast<std::uint32_t>(h.value % g.beta);
  return CellAddress{static_cast<std::uint32_t>(h.value % g.x), static_cast<std::uint32_t>(h.value % g.y), bit,
                     std::uint64_t{1} << bit};
}

/// Two-dimensional Bloom filter over an X-by-Y matrix of `Cell` words.
///
/// Each of the k probes hashes the key with its own seed and sets, tests or
/// clears one bit of one cell. Only bits below beta are ever touched.
///
/// remove() clears bits unconditionally once they are set, so removing a key
/// can erase bits shared with other keys and make them read as absent. Only
/// remove keys that were inserted, and accept that hazard.
///
/// Not synchronized: one writer or any number of readers at a time.
template <std::unsigned_integral Cell>
class BasicTwoDBloomFilter {
 public:
  using cell_type = Cell;
  static constexpr std::uint32_t kCellWidth = std::numeric_limits<Cell>::digits;

  explicit BasicTwoDBloomFilter(FilterGeometry geometry, HashVariant variant = default_variant())
      : BasicTwoDBloomFilter(geometry, variant, derive_seeds(geometry.k)) {}

  BasicTwoDBloomFilter(FilterGeometry geometry, HashVariant variant, std::vector<HashSeed> seeds)
      : geometry_{std::move(geometry)}, variant_{variant}, seeds_{std::move(seeds)} {
    if (geometry_.cell_width != kCellWidth) {
      throw std::invalid_argument("geometry cell width " + std::to_string(geometry_.cell_width) +
                                  " does not match cell type width " + std::to_string(kCellWidth));
    }
    if (geometry_.x == 0 || geometry_.y == 0 || geometry_.k == 0) {
      throw std::invalid_argument("geometry has a zero dimension or hash count");
    }
    if (geometry_.beta == 0 || geometry_.beta > kCellWidth) {
      throw std::invalid_argument("beta must lie in [1, cell width]");
    }
    if (seeds_.size() != geometry_.k) {
      throw std::invalid_argument("expected " + std::to_string(geometry_.k) + " seeds, got " +
                                  std::to_string(seeds_.size()));
    }
    cells_.assign(geometry_.cell_count(), Cell{0});
  }

  /// Sized by derive_geometry(n, epsilon, kCellWidth).
  static BasicTwoDBloomFilter for_capacity(std::uint64_t n, double epsilon, HashVariant variant = default_variant()) {
    return BasicTwoDBloomFilter{derive_geometry(n, epsilon, kCellWidth), variant};
  }

  void insert(std::string_view key) noexcept {
    for (const HashSeed seed : seeds_) {
      ++instrumentation::probe_count;
      const CellAddress a = locate(hash(key, seed, variant_), geometry_);
      cell_ref(a) |= static_cast<Cell>(a.mask);
    }
    ++inserted_count_;
  }

  /// True iff every probed bit is set. Stops at the first unset bit.
  bool contains(std::string_view key) const noexcept {
    for (const HashSeed seed : seeds_) {
      ++instrumentation::probe_count;
      const CellAddress a = locate(hash(key, seed, variant_), geometry_);
      if (((cell_at(a) & static_cast<Cell>(a.mask)) >> a.bit) == 0) {
        return false;
      }
    }
    return true;
  }

  /// Clears each probed bit that is currently set; other cells are untouched.
  void remove(std::string_view key) noexcept {
    for (const HashSeed seed : seeds_) {
      ++instrumentation::probe_count;
      const CellAddress a = locate(hash(key, seed, variant_), geometry_);
      const auto mask = static_cast<Cell>(a.mask);
      Cell& c = cell_ref(a);
      if ((c & mask) == mask) {
        c ^= mask;
      }
    }
    if (inserted_count_ > 0) {
      --inserted_count_;
    }
  }

  void clear() noexcept {
    std::fill(cells_.begin(), cells_.end(), Cell{0});
    inserted_count_ = 0;
  }

  /// X * Y * cell width.
  std::uint64_t memory_bits() const noexcept { return geometry_.memory_bits(); }

  Cell cell(std::uint32_t row, std::uint32_t col) const { return cells_.at(index(row, col)); }
  /// Row-major.
  std::span<const Cell> cells() const noexcept { return cells_; }

  const FilterGeometry& geometry() const noexcept { return geometry_; }
  HashVariant variant() const noexcept { return variant_; }
  std::span<const HashSeed> seeds() const noexcept { return seeds_; }
  std::uint64_t inserted_count() const noexcept { return inserted_count_; }

  /// Binary snapshot: common header, X, Y, cell width, beta, k, variant,
  /// seeds, inserted count, then row-major little-endian cells.
  void save(std::ostream& out) const {
    using detail::write_le;
    detail::write_header(out, detail::SnapshotTag::two_d);
    write_le<std::uint32_t>(out, geometry_.x);
    write_le<std::uint32_t>(out, geometry_.y);
    write_le<std::uint32_t>(out, geometry_.cell_width);
    write_le<std::uint32_t>(out, geometry_.beta);
    write_le<std::uint32_t>(out, geometry_.k);
    write_le<std::uint8_t>(out, static_cast<std::uint8_t>(variant_.block_bytes()));
    for (const HashSeed seed : seeds_) {
      write_le<std::uint64_t>(out, seed.value);
    }
    write_le<std::uint64_t>(out, inserted_count_);
    for (const Cell c : cells_) {
      write_le<Cell>(out, c);
    }
    if (!out) {
      throw IoError("failed writing filter snapshot");
    }
  }

  /// The sizing trace is not stored, so the loaded geometry has none.
  static BasicTwoDBloomFilter load(std::istream& in) {
    using detail::read_le;
    detail::read_header(in, detail::SnapshotTag::two_d);
    FilterGeometry g;
    g.x = read_le<std::uint32_t>(in);
    g.y = read_le<std::uint32_t>(in);
    g.cell_width = read_le<std::uint32_t>(in);
    g.beta = read_le<std::uint32_t>(in);
    g.k = read_le<std::uint32_t>(in);
    if (g.cell_width != kCellWidth) {
      throw SnapshotError("snapshot cell width " + std::to_string(g.cell_width) + " does not match " +
                          std::to_string(kCellWidth));
    }
    if (g.k == 0 || g.k > 4096 || g.beta == 0 || g.beta > kCellWidth || g.x == 0 || g.y == 0) {
      throw SnapshotError("snapshot geometry is invalid");
    }
    const auto block_bytes = read_le<std::uint8_t>(in);
    if (block_bytes < HashVariant::kMinBlockBytes || block_bytes > HashVariant::kMaxBlockBytes) {
      throw SnapshotError("snapshot hash variant is invalid");
    }
    std::vector<HashSeed> seeds(g.k);
    for (HashSeed& seed : seeds) {
      seed.value = read_le<std::uint64_t>(in);
    }
    BasicTwoDBloomFilter f{g, HashVariant::from_block_bytes(block_bytes), std::move(seeds)};
    f.inserted_count_ = read_le<std::uint64_t>(in);
    const Cell allowed = f.beta_mask();
    for (Cell& c : f.cells_) {
      c = read_le<Cell>(in);
      if ((c & ~allowed) != 0) {
        throw SnapshotError("snapshot cell uses bits at or above beta");
      }
    }
    return f;
  }

  friend bool operator==(const BasicTwoDBloomFilter& a, const BasicTwoDBloomFilter& b) {
    return a.geometry_.x == b.geometry_.x && a.geometry_.y == b.geometry_.y && a.geometry_.beta == b.geometry_.beta &&
           a.geometry_.k == b.geometry_.k && a.variant_ == b.variant_ && a.seeds_ == b.seeds_ &&
           a.inserted_count_ == b.inserted_count_ && a.cells_ == b.cells_;
  }

  /// Cell value with exactly bits [0, beta) set.
  Cell beta_mask() const noexcept {
    return geometry_.beta >= kCellWidth ? static_cast<Cell>(~Cell{0})
                                        : static_cast<Cell>((Cell{1} << geometry_.beta) - 1);
  }

 private:
  std::size_t index(std::uint32_t row, std::uint32_t col) const noexcept {
    return static_cast<std::size_t>(row) * geometry_.y + col;
  }
  Cell& cell_ref(const CellAddress& a) noexcept { return cells_[index(a.row, a.col)]; }
  Cell cell_at(const CellAddress& a) const noexcept { return cells_[index(a.row, a.col)]; }

  FilterGeometry geometry_;
  HashVariant variant_;
  std::vector<HashSeed> seeds_;
  std::vector<Cell> cells_;
  std::uint64_t inserted_count_{0};
};

/// The default 64-bit-cell filter (beta = 61).
using RobustBloomFilter = BasicTwoDBloomFilter<std::uint64_t>;

}  // namespace robustbf
