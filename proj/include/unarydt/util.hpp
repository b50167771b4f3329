#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>

namespace unarydt {

/// CRC-32 (reflected 0xEDB88320 polynomial, the zlib/IEEE variant).
/// Used for dataset/config fingerprints throughout the toolkit.
std::uint32_t crc32(const void* data, std::size_t len, std::uint32_t seed = 0);
std::uint32_t crc32(const std::string& data, std::uint32_t seed = 0);

std::string crc32_hex(std::uint32_t value);
std::uint32_t parse_crc32_hex(const std::string& text);

std::uint32_t crc32_file(const std::string& path);

/// Seeded random source for tie-breaking. All randomness in the toolkit
/// flows through this type so runs are reproducible from a single seed;
/// the generator name is recorded in output artifacts.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  static constexpr const char* name() { return "mt19937_64"; }

  /// Uniform index in [0, n). Exact-uniform via rejection sampling so the
  /// draw sequence is identical on every platform. n == 1 consumes nothing.
  std::size_t uniform_index(std::size_t n);

private:
  std::mt19937_64 engine_;
};

}  // namespace unarydt
