#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace robustbf {

/// Selects one of the nine modified murmur functions H1..H9.
///
/// The variants share one 64-bit mixing scheme and differ only in how many
/// input bytes are loaded per mixing round: Hn consumes n + 2 bytes, so H1
/// reads 3 bytes at a time and H9 reads 11.
class HashVariant {
 public:
  static constexpr int kMinBlockBytes = 3;
  static constexpr int kMaxBlockBytes = 11;
  static constexpr int kCount = kMaxBlockBytes - kMinBlockBytes + 1;

  /// Throws std::invalid_argument outside [3, 11].
  static HashVariant from_block_bytes(int block_bytes);
  /// `index` is the n in Hn; throws std::invalid_argument outside [1, 9].
  static HashVariant from_index(int index);
  /// Accepts "H4" or "h4".
  static std::optional<HashVariant> parse(std::string_view label);
  static std::array<HashVariant, kCount> all();

  constexpr int block_bytes() const noexcept { return block_bytes_; }
  constexpr int index() const noexcept { return block_bytes_ - 2; }
  std::string label() const;

  friend constexpr bool operator==(HashVariant, HashVariant) = default;

 private:
  constexpr explicit HashVariant(int block_bytes) noexcept : block_bytes_{block_bytes} {}

  int block_bytes_;

  friend constexpr HashVariant default_variant() noexcept;
};

/// H4, the variant the filters use unless told otherwise.
constexpr HashVariant default_variant() noexcept { return HashVariant{6}; }

struct HashSeed {
  std::uint64_t value{0};
  friend constexpr bool operator==(HashSeed, HashSeed) = default;
};

struct Digest {
  std::uint64_t value{0};
  friend constexpr bool operator==(Digest, Digest) = default;
};

namespace detail {

inline constexpr std::uint64_t kMurmurMul = 0xc6a4a7935bd1e995ULL;
inline constexpr int kMurmurShift = 47;
// Folds bytes 8..10 of a wide block into the 64-bit round word.
inline constexpr std::uint64_t kWideFold = 0x9e3779b97f4a7c15ULL;

// Little-endian load of up to 16 bytes; bytes past the eighth are folded in
// through an odd multiplier so every input byte reaches the round word.
inline std::uint64_t load_le(const unsigned char* p, std::size_t len) noexcept {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
  const std::size_t low_len = len < 8 ? len : 8;
  for (std::size_t i = 0; i < low_len; ++i) {
    lo |= static_cast<std::uint64_t>(p[i]) << (8 * i);
  }
  for (std::size_t i = 8; i < len; ++i) {
    hi |= static_cast<std::uint64_t>(p[i]) << (8 * (i - 8));
  }
  return lo ^ (hi * kWideFold);
}

template <std::size_t BlockBytes>
std::uint64_t murmur_blocks(const unsigned char* p, std::size_t len, std::uint64_t seed) noexcept {
  std::uint64_t h = seed ^ (((static_cast<std::uint64_t>(BlockBytes) << 56) | len) * kMurmurMul);

  const unsigned char* const end = p + (len / BlockBytes) * BlockBytes;
  for (; p != end; p += BlockBytes) {
    std::uint64_t k = load_le(p, BlockBytes);
    k *= kMurmurMul;
    k ^= k >> kMurmurShift;
    k *= kMurmurMul;
    h ^= k;
    h *= kMurmurMul;
  }

  if (const std::size_t rest = len % BlockBytes; rest != 0) {
    h ^= load_le(p, rest);
    h *= kMurmurMul;
  }

  h ^= h >> kMurmurShift;
  h *= kMurmurMul;
  h ^= h >> kMurmurShift;
  return h;
}

}  // namespace detail

/// Modified 64-bit murmur digest of `key` under `seed`, using the block
/// stride of `variant`. Byte order is fixed (little-endian loads), so
/// digests are identical on every platform.
inline Digest hash(std::span<const std::byte> key, HashSeed seed, HashVariant variant) noexcept {
  const auto* p = reinterpret_cast<const unsigned char*>(key.data());
  const std::size_t len = key.size();
  const std::uint64_t s = seed.value;
  switch (variant.block_bytes()) {
    case 3: return Digest{detail::murmur_blocks<3>(p, len, s)};
    case 4: return Digest{detail::murmur_blocks<4>(p, len, s)};
    case 5: return Digest{detail::murmur_blocks<5>(p, len, s)};
    case 6: return Digest{detail::murmur_blocks<6>(p, len, s)};
    case 7: return Digest{detail::murmur_blocks<7>(p, len, s)};
    case 8: return Digest{detail::murmur_blocks<8>(p, len, s)};
    case 9: return Digest{detail::murmur_blocks<9>(p, len, s)};
    case 10: return Digest{detail::murmur_blocks<10>(p, len, s)};
    default: return Digest{detail::murmur_blocks<11>(p, len, s)};
  }
}

inline Digest hash(std::string_view key, HashSeed seed, HashVariant variant) noexcept {
  return hash(std::as_bytes(std::span{key.data(), key.size()}), seed, variant);
}

/// splitmix64 finalizer. Bijective on 64-bit words.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// k pairwise-distinct seeds. derive_seeds(a) is a prefix of derive_seeds(b)
/// whenever a <= b. Throws std::invalid_argument for k == 0.
std::vector<HashSeed> derive_seeds(std::size_t k);

}  // namespace robustbf
