#include "robustbf/hash.hpp"

#include <stdexcept>

namespace robustbf {

namespace {

constexpr std::uint64_t kSeedBase = 0x7262667365656473ULL;  // "rbfseeds"

}  // namespace

HashVariant HashVariant::from_block_bytes(int block_bytes) {
  if (block_bytes < kMinBlockBytes || block_bytes > kMaxBlockBytes) {
    throw std::invalid_argument("hash variant block size must be in [3, 11], got " +
                                std::to_string(block_bytes));
  }
  return HashVariant{block_bytes};
}

HashVariant HashVariant::from_index(int index) {
  if (index < 1 || index > kCount) {
    throw std::invalid_argument("hash variant index must be in [1, 9], got " + std::to_string(index));
  }
  return HashVariant{index + 2};
}

std::optional<HashVariant> HashVariant::parse(std::string_view label) {
  if (label.size() != 2 || (label[0] != 'H' && label[0] != 'h')) {
    return std::nullopt;
  }
  const int index = label[1] - '0';
  if (index < 1 || index > kCount) {
    return std::nullopt;
  }
  return HashVariant{index + 2};
}

std::array<HashVariant, HashVariant::kCount> HashVariant::all() {
  std::array<HashVariant, kCount> out{
      HashVariant{3}, HashVariant{4}, HashVariant{5}, HashVariant{6}, HashVariant{7},
      HashVariant{8}, HashVariant{9}, HashVariant{10}, HashVariant{11}};
  return out;
}

std::string HashVariant::label() const { return "H" + std::to_string(index()); }

std::vector<HashSeed> derive_seeds(std::size_t k) {
  if (k == 0) {
    throw std::invalid_argument("derive_seeds: k must be at least 1");
  }
  std::vector<HashSeed> seeds;
  seeds.reserve(k);
  for (std::size_t j = 0; j < k; ++j) {
    seeds.push_back(HashSeed{splitmix64(kSeedBase ^ static_cast<std::uint64_t>(j))});
  }
  return seeds;
}

}  // namespace robustbf
