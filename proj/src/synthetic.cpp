#include "tmprune/synthetic.hpp"

#include <algorithm>
#include <cstdio>
#include <random>

#include "tmprune/error.hpp"
#include "tmprune/tsetlin.hpp"

namespace tmprune {
namespace {

std::string numbered(const char* prefix, std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%s%03zu", prefix, i);
  return buf;
}

std::size_t draw(Rng& rng, std::size_t bound) { return static_cast<std::size_t>(rng() % bound); }

}  // namespace

SyntheticWords synthetic_words(const SyntheticSpec& spec) {
  const std::size_t planted = 2 * spec.keywords_per_class + spec.noise_words;
  if (spec.keywords_per_class == 0 || planted >= spec.vocab_size) {
    throw ConfigError("synthetic vocabulary too small for keywords and noise words");
  }
  SyntheticWords words;
  words.keywords.resize(2);
  for (std::size_t i = 0; i < spec.keywords_per_class; ++i) {
    words.keywords[0].push_back(numbered("alpha", i));
    words.keywords[1].push_back(numbered("beta", i));
  }
  for (std::size_t i = 0; i < spec.noise_words; ++i) words.noise.push_back(numbered("noise", i));
  for (std::size_t i = 0; i < spec.vocab_size - planted; ++i) {
    words.filler.push_back(numbered("filler", i));
  }
  return words;
}

Dataset generate_synthetic(const SyntheticSpec& spec) {
  if (spec.min_tokens == 0 || spec.min_tokens > spec.max_tokens ||
      spec.max_keywords == 0 || spec.max_keywords > spec.min_tokens) {
    throw ConfigError("synthetic document length settings are inconsistent");
  }
  const SyntheticWords words = synthetic_words(spec);
  Rng rng(spec.seed);
  Dataset ds;
  ds.labels = {"class_a", "class_b"};
  ds.split = "synthetic";
  ds.documents.reserve(spec.num_documents);
  for (std::size_t d = 0; d < spec.num_documents; ++d) {
    const std::size_t label = draw(rng, 2);
    const std::size_t length = spec.min_tokens + draw(rng, spec.max_tokens - spec.min_tokens + 1);
    const std::size_t keyword_count = 1 + draw(rng, spec.max_keywords);
    std::vector<std::string> tokens(length);
    std::vector<std::uint8_t> mask(length, 0);
    // Keyword slots: a random subset of positions.
    std::vector<std::size_t> positions(length);
    for (std::size_t i = 0; i < length; ++i) positions[i] = i;
    for (std::size_t i = 0; i < keyword_count; ++i) {
      std::swap(positions[i], positions[i + draw(rng, length - i)]);
    }
    for (std::size_t i = 0; i < keyword_count; ++i) {
      const auto& pool = words.keywords[label];
      tokens[positions[i]] = pool[draw(rng, pool.size())];
      mask[positions[i]] = 1;
    }
    for (std::size_t i = 0; i < length; ++i) {
      if (mask[i]) continue;
      const bool noise = !words.noise.empty() && uniform01(rng) < spec.noise_share;
      const auto& pool = noise ? words.noise : words.filler;
      tokens[i] = pool[draw(rng, pool.size())];
    }
    std::string text;
    for (std::size_t i = 0; i < length; ++i) {
      if (i) text += ' ';
      text += tokens[i];
    }
    std::vector<std::vector<std::uint8_t>> hams;
    for (std::size_t a = 0; a < spec.annotators; ++a) {
      std::vector<std::uint8_t> ham = mask;
      if (a > 0) {
        for (auto& v : ham) {
          if (uniform01(rng) < spec.annotator_flip) v ^= 1u;
        }
      }
      hams.push_back(std::move(ham));
    }
    ds.documents.push_back(make_document(std::move(text), label, std::move(hams)));
  }
  return ds;
}

SyntheticSplit generate_synthetic_split(const SyntheticSpec& spec) {
  Dataset all = generate_synthetic(spec);
  const std::size_t train_count = all.documents.size() * 3 / 4;
  SyntheticSplit split;
  split.train.labels = all.labels;
  split.test.labels = all.labels;
  split.train.split = "train";
  split.test.split = "test";
  split.train.documents.assign(all.documents.begin(), all.documents.begin() + train_count);
  split.test.documents.assign(all.documents.begin() + train_count, all.documents.end());
  return split;
}

}  // namespace tmprune
