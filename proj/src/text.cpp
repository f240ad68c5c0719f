#include "tmprune/text.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>

#include "tmprune/error.hpp"
#include "tmprune/fingerprint.hpp"

namespace tmprune {
namespace {

bool is_space(unsigned char c) { return std::isspace(c) != 0; }
bool is_punct(unsigned char c) { return c < 0x80 && std::ispunct(c) != 0; }

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_space(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t end = i;
    while (end < text.size() && !is_space(static_cast<unsigned char>(text[end]))) ++end;
    std::size_t first = i;
    std::size_t last = end;
    while (first < last && is_punct(static_cast<unsigned char>(text[first]))) ++first;
    while (last > first && is_punct(static_cast<unsigned char>(text[last - 1]))) --last;
    if (first < last) {
      std::string token(text.substr(first, last - first));
      for (char& c : token) {
        if (static_cast<unsigned char>(c) < 0x80) {
          c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        }
      }
      tokens.push_back(std::move(token));
    }
    i = end;
  }
  return tokens;
}

Vocabulary::Vocabulary(std::vector<std::string> words) : words_(std::move(words)) {
  index_.reserve(words_.size());
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (words_[i].empty()) throw FormatError("vocabulary word " + std::to_string(i) + " is empty");
    if (!index_.emplace(words_[i], i).second) {
      throw FormatError("duplicate vocabulary word '" + words_[i] + "'");
    }
  }
  fingerprint_ = fingerprint_lines(words_);
}

std::optional<std::size_t> Vocabulary::find(std::string_view word) const {
  auto it = index_.find(std::string(word));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

void Vocabulary::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw DataError("cannot write vocabulary " + path.string());
  out << "# fingerprint " << fingerprint_hex(fingerprint_) << '\n';
  for (const auto& w : words_) out << w << '\n';
}

Vocabulary Vocabulary::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open vocabulary " + path.string());
  std::string header;
  std::getline(in, header);
  constexpr std::string_view kPrefix = "# fingerprint ";
  if (header.rfind(kPrefix, 0) != 0) throw FormatError("vocabulary missing fingerprint header");
  const auto stored = parse_fingerprint_hex(std::string_view(header).substr(kPrefix.size()));
  if (!stored) throw FormatError("vocabulary fingerprint is not 16 hex digits");
  std::vector<std::string> words;
  for (std::string line; std::getline(in, line);) words.push_back(line);
  Vocabulary vocab(std::move(words));
  if (vocab.fingerprint() != *stored) {
    throw FormatError("vocabulary fingerprint mismatch in " + path.string());
  }
  return vocab;
}

Vocabulary build_vocabulary(std::span<const std::vector<std::string>> corpus,
                            std::size_t max_size) {
  std::map<std::string, std::size_t> freq;
  for (const auto& doc : corpus) {
    for (const auto& tok : doc) ++freq[tok];
  }
  if (freq.empty()) throw DataError("cannot build a vocabulary from an empty corpus");
  std::vector<std::pair<std::string, std::size_t>> ranked(freq.begin(), freq.end());
  // std::map iteration is already lexicographic; a stable sort keeps it
  // within equal counts.
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  if (ranked.size() > max_size) ranked.resize(max_size);
  std::vector<std::string> words;
  words.reserve(ranked.size());
  for (auto& [w, _] : ranked) words.push_back(std::move(w));
  return Vocabulary(std::move(words));
}

std::vector<std::optional<std::size_t>> encode(std::span<const std::string> tokens,
                                               const Vocabulary& vocab) {
  std::vector<std::optional<std::size_t>> ids;
  ids.reserve(tokens.size());
  for (const auto& tok : tokens) ids.push_back(vocab.find(tok));
  return ids;
}

BooleanBow vectorize(std::span<const std::string> tokens, const Vocabulary& vocab) {
  BooleanBow bow(vocab.size());
  for (const auto& tok : tokens) {
    if (auto id = vocab.find(tok)) bow.set(*id);
  }
  return bow;
}

BooleanBow vectorize_ids(std::span<const std::optional<std::size_t>> ids,
                         std::size_t vocab_size) {
  BooleanBow bow(vocab_size);
  for (const auto& id : ids) {
    if (id) bow.set(*id);
  }
  return bow;
}

}  // namespace tmprune
