// Regenerates tests/fixtures/hash_golden.txt. Only run this when the digest
// function is intentionally changed; the fixture pins it bit-exactly.

#include <iostream>

#include "support/golden_corpus.hpp"

int main() {
  for (const auto& key : golden::keys()) {
    for (const auto seed : golden::seeds()) {
      for (const auto variant : robustbf::HashVariant::all()) {
        std::cout << golden::record(key, seed, variant) << '\n';
      }
    }
  }
  return 0;
}
