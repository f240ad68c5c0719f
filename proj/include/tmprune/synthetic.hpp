#pragma once

// Planted-keyword benchmark: two classes, each with a handful of keywords
// that only ever occur in documents of that class, plus class-neutral noise
// and filler words. The keyword positions give a ground-truth attention mask.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "tmprune/dataset.hpp"

namespace tmprune {

struct SyntheticSpec {
  std::size_t num_documents = 2000;
  std::size_t vocab_size = 200;
  std::size_t keywords_per_class = 5;
  std::size_t noise_words = 50;
  std::size_t min_tokens = 10;
  std::size_t max_tokens = 30;
  // Keyword tokens per document are drawn from [1, max_keywords].
  std::size_t max_keywords = 3;
  // Share of non-keyword tokens taken from the noise pool rather than filler.
  double noise_share = 0.5;
  // Annotator 1 is the exact keyword mask; further annotators flip each
  // entry with probability `annotator_flip`.
  std::size_t annotators = 1;
  double annotator_flip = 0.05;
  std::uint64_t seed = 42;
};

struct SyntheticWords {
  std::vector<std::vector<std::string>> keywords;  // per class
  std::vector<std::string> noise;
  std::vector<std::string> filler;
};

SyntheticWords synthetic_words(const SyntheticSpec& spec);

// Labels are "class_a" and "class_b".
Dataset generate_synthetic(const SyntheticSpec& spec);

struct SyntheticSplit {
  Dataset train;
  Dataset test;
};

// Generates spec.num_documents documents and splits them 75 / 25.
SyntheticSplit generate_synthetic_split(const SyntheticSpec& spec);

}  // namespace tmprune
