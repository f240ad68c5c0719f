#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace tmprune {

// 64-bit FNV-1a. Stable across platforms; used to bind models, vocabularies
// and configs together, not for security.
class Fnv1a64 {
 public:
  void update(std::string_view bytes) noexcept;
  std::uint64_t digest() const noexcept { return hash_; }

 private:
  std::uint64_t hash_ = 0xcbf29ce484222325ull;
};

std::uint64_t fingerprint_lines(std::span<const std::string> lines);

// 16 lowercase hex digits.
std::string fingerprint_hex(std::uint64_t fingerprint);
std::optional<std::uint64_t> parse_fingerprint_hex(std::string_view text);

}  // namespace tmprune
