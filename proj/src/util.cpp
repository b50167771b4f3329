#include "unarydt/util.hpp"

#include <array>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace unarydt {

namespace {

std::array<std::uint32_t, 256> make_crc_table() {
  std::array<std::uint32_t, 256> table{};
  for (std::uint32_t i = 0; i < 256; ++i) {
    std::uint32_t c = i;
    for (int k = 0; k < 8; ++k) {
      c = (c & 1u) ? 0xEDB88320u ^ (c >> 1) : c >> 1;
    }
    table[i] = c;
  }
  return table;
}

}  // namespace

std::uint32_t crc32(const void* data, std::size_t len, std::uint32_t seed) {
  static const std::array<std::uint32_t, 256> table = make_crc_table();
  const auto* bytes = static_cast<const unsigned char*>(data);
  std::uint32_t c = seed ^ 0xFFFFFFFFu;
  for (std::size_t i = 0; i < len; ++i) {
    c = table[(c ^ bytes[i]) & 0xFFu] ^ (c >> 8);
  }
  return c ^ 0xFFFFFFFFu;
}

std::uint32_t crc32(const std::string& data, std::uint32_t seed) {
  return crc32(data.data(), data.size(), seed);
}

std::string crc32_hex(std::uint32_t value) {
  char buf[11];
  std::snprintf(buf, sizeof(buf), "0x%08x", value);
  return buf;
}

std::uint32_t parse_crc32_hex(const std::string& text) {
  if (text.empty()) {
    throw std::invalid_argument("empty crc32 string");
  }
  std::size_t pos = 0;
  unsigned long value = std::stoul(text, &pos, 16);
  if (pos != text.size() || value > 0xFFFFFFFFul) {
    throw std::invalid_argument("malformed crc32 string: " + text);
  }
  return static_cast<std::uint32_t>(value);
}

std::uint32_t crc32_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open file: " + path);
  }
  std::uint32_t c = 0;
  char buf[1 << 16];
  while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
    c = crc32(buf, static_cast<std::size_t>(in.gcount()), c);
  }
  return c;
}

std::size_t Rng::uniform_index(std::size_t n) {
  if (n == 0) {
    throw std::invalid_argument("uniform_index: n must be positive");
  }
  if (n == 1) {
    return 0;
  }
  const std::uint64_t bound = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t draw;
  do {
    draw = engine_();
  } while (draw >= bound);
  return static_cast<std::size_t>(draw % n);
}

}  // namespace unarydt
