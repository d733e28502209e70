#include "robustbf/geometry.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "robustbf/errors.hpp"

namespace robustbf {

namespace {

constexpr std::size_t kDimensionOffset = 3;

void check_sizing_inputs(std::uint64_t n, double epsilon) {
  if (n == 0) {
    throw std::invalid_argument("item count n must be at least 1");
  }
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw std::invalid_argument("epsilon must lie in (0, 1), got " + std::to_string(epsilon));
  }
}

void check_cell_width(std::uint32_t cell_width) {
  if (!is_supported_cell_width(cell_width)) {
    throw std::invalid_argument("cell width must be 8, 16, 32 or 64, got " + std::to_string(cell_width));
  }
}

std::uint64_t cells_target(std::uint64_t m, std::uint32_t beta) { return m / (2ULL * beta); }

}  // namespace

std::uint64_t optimal_bits(std::uint64_t n, double epsilon) {
  check_sizing_inputs(n, epsilon);
  const double ln2 = std::numbers::ln2;
  return static_cast<std::uint64_t>(std::ceil(-static_cast<double>(n) * std::log(epsilon) / (ln2 * ln2)));
}

std::uint32_t optimal_hash_count(std::uint64_t m, std::uint64_t n) {
  if (m == 0 || n == 0) {
    throw std::invalid_argument("optimal_hash_count: m and n must be positive");
  }
  const double k = std::round(static_cast<double>(m) / static_cast<double>(n) * std::numbers::ln2);
  return k < 1.0 ? 1U : static_cast<std::uint32_t>(k);
}

bool is_supported_cell_width(std::uint32_t cell_width) noexcept {
  return cell_width == 8 || cell_width == 16 || cell_width == 32 || cell_width == 64;
}

FilterGeometry FilterGeometry::custom(std::uint32_t x, std::uint32_t y, std::uint32_t k, std::uint32_t cell_width) {
  check_cell_width(cell_width);
  if (!is_prime(x) || !is_prime(y)) {
    throw std::invalid_argument("filter dimensions must be prime");
  }
  if (x == y) {
    throw std::invalid_argument("filter dimensions must differ");
  }
  if (k == 0) {
    throw std::invalid_argument("hash count must be at least 1");
  }
  return FilterGeometry{x, y, largest_prime_at_most(cell_width), k, cell_width, std::nullopt};
}

FilterGeometry derive_geometry(std::uint64_t n, double epsilon, std::uint32_t cell_width, const PrimeTable& table) {
  check_sizing_inputs(n, epsilon);
  check_cell_width(cell_width);

  SizingTrace trace;
  trace.n = n;
  trace.epsilon = epsilon;
  const std::uint32_t beta = largest_prime_at_most(cell_width);
  trace.m = optimal_bits(n, epsilon);
  trace.q = cells_target(trace.m, beta);
  trace.t = std::sqrt(static_cast<double>(trace.q));
  trace.prime_index = select_prime(table, trace.t);

  if (trace.prime_index < kDimensionOffset) {
    const std::uint64_t minimum = minimum_items(epsilon, cell_width, table);
    throw GeometryUnderflowError("filter too small: n = " + std::to_string(n) + " at epsilon " +
                                     std::to_string(epsilon) + " gives prime index " +
                                     std::to_string(trace.prime_index) + " < 3; use n >= " +
                                     std::to_string(minimum),
                                 minimum);
  }
  if (trace.prime_index + kDimensionOffset >= table.size()) {
    throw TableExhaustedError("prime table too small for X = P[" +
                              std::to_string(trace.prime_index + kDimensionOffset) + "]");
  }

  FilterGeometry g;
  g.x = table[trace.prime_index + kDimensionOffset];
  g.y = table[trace.prime_index - kDimensionOffset];
  g.beta = beta;
  g.cell_width = cell_width;
  const double half_k = std::round(static_cast<double>(optimal_hash_count(trace.m, n)) / 2.0);
  g.k = half_k < 1.0 ? 1U : static_cast<std::uint32_t>(half_k);
  g.trace = trace;
  return g;
}

std::uint64_t minimum_items(double epsilon, std::uint32_t cell_width, const PrimeTable& table) {
  check_sizing_inputs(1, epsilon);
  check_cell_width(cell_width);
  if (table.size() <= kDimensionOffset) {
    throw TableExhaustedError("prime table holds fewer than four primes");
  }
  // Index >= 3 iff sqrt(q) >= P[2], i.e. q >= P[2]^2.
  const std::uint32_t beta = largest_prime_at_most(cell_width);
  const double threshold = static_cast<double>(table[kDimensionOffset - 1]);
  const auto fits = [&](std::uint64_t n) {
    return std::sqrt(static_cast<double>(cells_target(optimal_bits(n, epsilon), beta))) >= threshold;
  };
  const double ln2 = std::numbers::ln2;
  const double estimate = threshold * threshold * 2.0 * beta * ln2 * ln2 / -std::log(epsilon);
  std::uint64_t n = estimate > 3.0 ? static_cast<std::uint64_t>(estimate) - 2 : 1;
  while (n > 1 && fits(n - 1)) {
    --n;
  }
  while (!fits(n)) {
    ++n;
  }
  return n;
}

}  // namespace robustbf
