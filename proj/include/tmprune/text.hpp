#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "tmprune/tsetlin.hpp"

namespace tmprune {

// Lowercases ASCII, splits on whitespace and trims leading/trailing ASCII
// punctuation from each piece. Apostrophes inside a token survive ("i've").
// Pieces that trim to nothing are dropped.
std::vector<std::string> tokenize(std::string_view text);

class Vocabulary {
 public:
  Vocabulary() = default;
  // Words must be unique and non-empty; their order defines the indices.
  explicit Vocabulary(std::vector<std::string> words);

  std::size_t size() const noexcept { return words_.size(); }
  std::optional<std::size_t> find(std::string_view word) const;
  const std::string& word(std::size_t index) const { return words_.at(index); }
  const std::vector<std::string>& words() const noexcept { return words_; }
  std::uint64_t fingerprint() const noexcept { return fingerprint_; }

  // First line "# fingerprint <16 hex digits>", then one word per line.
  void save(const std::filesystem::path& path) const;
  // Throws FormatError if the stored fingerprint does not match the words.
  static Vocabulary load(const std::filesystem::path& path);

 private:
  std::vector<std::string> words_;
  std::unordered_map<std::string, std::size_t> index_;
  std::uint64_t fingerprint_ = 0;
};

// Top `max_size` tokens by corpus frequency, most frequent first, ties in
// lexicographic order. Throws DataError on an empty corpus.
Vocabulary build_vocabulary(std::span<const std::vector<std::string>> corpus,
                            std::size_t max_size);

// Vocabulary index per token position; nullopt for out-of-vocabulary tokens.
std::vector<std::optional<std::size_t>> encode(std::span<const std::string> tokens,
                                               const Vocabulary& vocab);

BooleanBow vectorize(std::span<const std::string> tokens, const Vocabulary& vocab);
BooleanBow vectorize_ids(std::span<const std::optional<std::size_t>> ids,
                         std::size_t vocab_size);

}  // namespace tmprune
