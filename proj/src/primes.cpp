#include "robustbf/primes.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "robustbf/errors.hpp"

namespace robustbf {

namespace {

constexpr std::size_t kLinearScanLimit = 10'000;

}  // namespace

PrimeTable::PrimeTable(std::uint32_t bound) : bound_{bound} {
  if (bound < 3) {
    return;
  }
  std::vector<bool> composite(bound, false);
  for (std::uint64_t p = 2; p * p < bound; ++p) {
    if (composite[p]) {
      continue;
    }
    for (std::uint64_t multiple = p * p; multiple < bound; multiple += p) {
      composite[multiple] = true;
    }
  }
  for (std::uint32_t v = 2; v < bound; ++v) {
    if (!composite[v]) {
      primes_.push_back(v);
    }
  }
}

const PrimeTable& PrimeTable::standard() {
  static const PrimeTable table{kStandardBound};
  return table;
}

std::size_t select_prime(const PrimeTable& table, double t) {
  if (std::isnan(t)) {
    throw std::invalid_argument("select_prime: threshold is NaN");
  }
  const auto primes = table.primes();
  if (primes.size() <= kLinearScanLimit) {
    for (std::size_t i = 0; i < primes.size(); ++i) {
      if (static_cast<double>(primes[i]) > t) {
        return i;
      }
    }
  } else {
    const auto it = std::upper_bound(primes.begin(), primes.end(), t,
                                     [](double lhs, std::uint32_t p) { return lhs < static_cast<double>(p); });
    if (it != primes.end()) {
      return static_cast<std::size_t>(it - primes.begin());
    }
  }
  throw TableExhaustedError("select_prime: no prime above " + std::to_string(t) + " in a table bounded by " +
                            std::to_string(table.bound()));
}

bool is_prime(std::uint64_t value) noexcept {
  if (value < 2) {
    return false;
  }
  if (value % 2 == 0) {
    return value == 2;
  }
  for (std::uint64_t d = 3; d * d <= value; d += 2) {
    if (value % d == 0) {
      return false;
    }
  }
  return true;
}

std::uint32_t largest_prime_at_most(std::uint32_t value) {
  if (value < 2) {
    throw std::invalid_argument("no prime at or below " + std::to_string(value));
  }
  while (!is_prime(value)) {
    --value;
  }
  return value;
}

}  // namespace robustbf
