#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace robustbf {

/// Ascending table of every prime below a bound, built with a sieve.
class PrimeTable {
 public:
  static constexpr std::uint32_t kStandardBound = 10'000'000;

  explicit PrimeTable(std::uint32_t bound);

  /// Shared table of all primes below 10^7, built on first use.
  static const PrimeTable& standard();

  std::span<const std::uint32_t> primes() const noexcept { return primes_; }
  std::uint32_t operator[](std::size_t i) const { return primes_.at(i); }
  std::size_t size() const noexcept { return primes_.size(); }
  std::uint32_t bound() const noexcept { return bound_; }

 private:
  std::uint32_t bound_;
  std::vector<std::uint32_t> primes_;
};

/// Smallest index i with table[i] > t. Linear scan for small tables, binary
/// search above 10^4 entries; both return the same index.
/// Throws TableExhaustedError when no entry exceeds t and std::invalid_argument for NaN.
std::size_t select_prime(const PrimeTable& table, double t);

bool is_prime(std::uint64_t value) noexcept;

/// Largest prime <= value; throws std::invalid_argument for value < 2.
std::uint32_t largest_prime_at_most(std::uint32_t value);

}  // namespace robustbf
