#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace robustbf {

// The prime table has no entry above the requested threshold.
class TableExhaustedError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// The requested (n, epsilon) yields a prime index too small for the Y = P[i - 3] offset.
class GeometryUnderflowError : public std::domain_error {
 public:
  GeometryUnderflowError(const std::string& what, std::uint64_t minimum_n)
      : std::domain_error{what}, minimum_n_{minimum_n} {}

  std::uint64_t minimum_n() const noexcept { return minimum_n_; }

 private:
  std::uint64_t minimum_n_;
};

// Malformed, truncated or mismatched binary snapshot.
class SnapshotError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace robustbf
