#include "tmprune/fingerprint.hpp"

#include <charconv>
#include <cstdio>

namespace tmprune {

void Fnv1a64::update(std::string_view bytes) noexcept {
  for (unsigned char c : bytes) {
    hash_ ^= c;
    hash_ *= 0x100000001b3ull;
  }
}

std::uint64_t fingerprint_lines(std::span<const std::string> lines) {
  Fnv1a64 h;
  for (const std::string& line : lines) {
    h.update(line);
    h.update("\n");
  }
  return h.digest();
}

std::string fingerprint_hex(std::uint64_t fingerprint) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(fingerprint));
  return buf;
}

std::optional<std::uint64_t> parse_fingerprint_hex(std::string_view text) {
  if (text.size() != 16) return std::nullopt;
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value, 16);
  if (ec != std::errc() || ptr != text.data() + text.size()) return std::nullopt;
  return value;
}

}  // namespace tmprune
