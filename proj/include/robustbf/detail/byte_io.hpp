#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <ostream>
#include <string>

#include "robustbf/errors.hpp"

namespace robustbf::detail {

inline constexpr std::array<char, 4> kSnapshotMagic{'R', 'B', 'F', 'S'};
inline constexpr std::uint16_t kSnapshotVersion = 1;

enum class SnapshotTag : std::uint8_t { two_d = 1, standard = 2, counting = 3 };

template <typename T>
void write_le(std::ostream& out, T value, std::size_t bytes = sizeof(T)) {
  std::array<char, 8> buf{};
  const auto v = static_cast<std::uint64_t>(value);
  for (std::size_t i = 0; i < bytes; ++i) {
    buf[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
  }
  out.write(buf.data(), static_cast<std::streamsize>(bytes));
}

template <typename T>
T read_le(std::istream& in, std::size_t bytes = sizeof(T)) {
  std::array<unsigned char, 8> buf{};
  in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(bytes));
  if (!in) {
    throw SnapshotError("snapshot truncated");
  }
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < bytes; ++i) {
    v |= static_cast<std::uint64_t>(buf[i]) << (8 * i);
  }
  return static_cast<T>(v);
}

inline void write_header(std::ostream& out, SnapshotTag tag) {
  out.write(kSnapshotMagic.data(), kSnapshotMagic.size());
  write_le<std::uint16_t>(out, kSnapshotVersion);
  write_le<std::uint8_t>(out, static_cast<std::uint8_t>(tag));
  write_le<std::uint8_t>(out, 0);
}

inline void read_header(std::istream& in, SnapshotTag expected) {
  std::array<char, 4> magic{};
  in.read(magic.data(), magic.size());
  if (!in || magic != kSnapshotMagic) {
    throw SnapshotError("not a filter snapshot (bad magic)");
  }
  if (const auto version = read_le<std::uint16_t>(in); version != kSnapshotVersion) {
    throw SnapshotError("unsupported snapshot version " + std::to_string(version));
  }
  if (const auto tag = read_le<std::uint8_t>(in); tag != static_cast<std::uint8_t>(expected)) {
    throw SnapshotError("snapshot holds filter type " + std::to_string(tag) + ", expected " +
                        std::to_string(static_cast<int>(expected)));
  }
  read_le<std::uint8_t>(in);
}

}  // namespace robustbf::detail
