#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "robustbf/primes.hpp"

namespace robustbf {

/// Bit budget m = ceil(-n ln(epsilon) / (ln 2)^2) of a classic Bloom filter.
/// Throws std::invalid_argument for n == 0 or epsilon outside (0, 1).
std::uint64_t optimal_bits(std::uint64_t n, double epsilon);

/// round((m / n) ln 2), clamped to at least 1.
std::uint32_t optimal_hash_count(std::uint64_t m, std::uint64_t n);

/// How a geometry was sized from (n, epsilon).
struct SizingTrace {
  std::uint64_t n{0};
  double epsilon{0.0};
  std::uint64_t m{0};            // optimal_bits(n, epsilon)
  std::uint64_t q{0};            // floor(m / (2 * beta))
  double t{0.0};                 // sqrt(q), unrounded
  std::size_t prime_index{0};    // select_prime(t)

  friend bool operator==(const SizingTrace&, const SizingTrace&) = default;
};

/// Shape of a two-dimensional Bloom filter: an x-by-y matrix of cells, each
/// `cell_width` bits wide of which the low `beta` bits are addressable.
struct FilterGeometry {
  std::uint32_t x{0};
  std::uint32_t y{0};
  std::uint32_t beta{0};
  std::uint32_t k{0};
  std::uint32_t cell_width{0};
  std::optional<SizingTrace> trace;

  std::uint64_t cell_count() const noexcept { return static_cast<std::uint64_t>(x) * y; }
  std::uint64_t memory_bits() const noexcept { return cell_count() * cell_width; }

  /// Hand-built geometry (tests, toy filters). beta is the largest prime
  /// <= cell_width. Throws std::invalid_argument if x or y is not prime,
  /// x == y, k == 0, or cell_width is not 8, 16, 32 or 64.
  static FilterGeometry custom(std::uint32_t x, std::uint32_t y, std::uint32_t k, std::uint32_t cell_width = 64);

  friend bool operator==(const FilterGeometry&, const FilterGeometry&) = default;
};

bool is_supported_cell_width(std::uint32_t cell_width) noexcept;

/// Sizes a filter for n items at target false-positive rate epsilon:
/// beta is the largest prime <= cell_width, q = floor(m / (2 beta)),
/// i = select_prime(sqrt(q)), X = P[i + 3], Y = P[i - 3], and k is half the
/// classic optimum, rounded, at least 1.
///
/// Throws GeometryUnderflowError when i < 3, TableExhaustedError when the
/// table has no prime above sqrt(q), std::invalid_argument on bad inputs.
FilterGeometry derive_geometry(std::uint64_t n, double epsilon, std::uint32_t cell_width = 64,
                               const PrimeTable& table = PrimeTable::standard());

/// Smallest n for which derive_geometry(n, epsilon, cell_width) does not underflow.
std::uint64_t minimum_items(double epsilon, std::uint32_t cell_width = 64,
                            const PrimeTable& table = PrimeTable::standard());

}  // namespace robustbf
