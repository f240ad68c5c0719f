#include "tmprune/explain.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_map>

#include "tmprune/error.hpp"

namespace tmprune {
namespace {

void check_class(const Model& model, std::size_t class_index) {
  if (class_index >= model.config().num_classes) {
    throw std::out_of_range("class index " + std::to_string(class_index) + " out of range");
  }
}

void check_positions(TokenIds doc, std::span<const std::size_t> positions) {
  for (std::size_t p : positions) {
    if (p >= doc.size()) {
      throw std::out_of_range("token position " + std::to_string(p) + " out of range for " +
                              std::to_string(doc.size()) + " tokens");
    }
  }
}

BooleanBow bow_of(const Model& model, TokenIds doc) {
  BooleanBow bow(model.vocab_size());
  for (const auto& id : doc) {
    if (id) bow.set(*id);
  }
  return bow;
}

}  // namespace

std::string_view mode_name(AttentionMode mode) {
  switch (mode) {
    case AttentionMode::kComprehensiveness:
      return "comprehensiveness";
    case AttentionMode::kSufficiency:
      return "sufficiency";
    case AttentionMode::kHuman:
      return "human";
  }
  return "unknown";
}

AttentionMode parse_mode(std::string_view name) {
  if (name == "comprehensiveness") return AttentionMode::kComprehensiveness;
  if (name == "sufficiency") return AttentionMode::kSufficiency;
  if (name == "human") return AttentionMode::kHuman;
  throw ConfigError("unknown attention mode '" + std::string(name) + "'");
}

AttentionMap human_map(std::span<const std::uint8_t> ham) {
  AttentionMap map;
  map.mode = AttentionMode::kHuman;
  map.scores.reserve(ham.size());
  for (std::uint8_t v : ham) {
    if (v > 1) throw std::invalid_argument("human attention map entries must be 0 or 1");
    map.scores.push_back(v);
  }
  return map;
}

double model_confidence(const Model& model, const BooleanBow& x, std::size_t class_index) {
  check_class(model, class_index);
  const std::vector<int> scores = class_scores(model, x);
  long others = 0;
  for (std::size_t c = 0; c < scores.size(); ++c) {
    if (c != class_index) others += scores[c];
  }
  const double margin = std::fabs(static_cast<double>(scores[class_index] - others));
  return margin / (static_cast<double>(scores.size()) * model.config().vote_clip_t);
}

double comprehensiveness(const Model& model, TokenIds doc, std::span<const std::size_t> removed,
                         std::size_t class_index) {
  check_class(model, class_index);
  check_positions(doc, removed);
  std::vector<std::optional<std::size_t>> remaining(doc.begin(), doc.end());
  for (std::size_t p : removed) remaining[p].reset();
  return model_confidence(model, bow_of(model, doc), class_index) -
         model_confidence(model, bow_of(model, remaining), class_index);
}

double sufficiency(const Model& model, TokenIds doc, std::span<const std::size_t> kept,
                   std::size_t class_index) {
  check_class(model, class_index);
  check_positions(doc, kept);
  std::vector<std::optional<std::size_t>> only;
  only.reserve(kept.size());
  for (std::size_t p : kept) only.push_back(doc[p]);
  return model_confidence(model, bow_of(model, doc), class_index) -
         model_confidence(model, bow_of(model, only), class_index);
}

std::vector<double> min_max_normalize(std::span<const double> values) {
  std::vector<double> out(values.size(), 0.0);
  if (values.empty()) return out;
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  const double range = *hi - *lo;
  if (!(range > 0.0)) return out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    out[i] = std::clamp((values[i] - *lo) / range, 0.0, 1.0);
  }
  return out;
}

AttentionMap tam(const Model& model, TokenIds doc, AttentionMode mode) {
  if (mode == AttentionMode::kHuman) {
    throw std::invalid_argument("tam: mode must be comprehensiveness or sufficiency");
  }
  AttentionMap map;
  map.mode = mode;
  if (doc.empty()) return map;

  const BooleanBow x = bow_of(model, doc);
  const std::size_t predicted = predict(model, x);
  const double base = model_confidence(model, x, predicted);

  std::unordered_map<std::size_t, std::size_t> occurrences;
  for (const auto& id : doc) {
    if (id) ++occurrences[*id];
  }

  // Every perturbation only depends on the word at the position, so score
  // each distinct word once.
  std::unordered_map<std::size_t, double> by_word;
  std::vector<double> raw(doc.size(), 0.0);
  const BooleanBow empty(model.vocab_size());
  const double empty_score = base - model_confidence(model, empty, predicted);
  for (std::size_t k = 0; k < doc.size(); ++k) {
    const auto& id = doc[k];
    if (!id) {
      // Deleting an unknown token changes nothing; keeping only it leaves
      // an empty input.
      raw[k] = mode == AttentionMode::kComprehensiveness ? 0.0 : empty_score;
      continue;
    }
    auto cached = by_word.find(*id);
    if (cached != by_word.end()) {
      raw[k] = cached->second;
      continue;
    }
    double score;
    if (mode == AttentionMode::kComprehensiveness) {
      if (occurrences[*id] > 1) {
        score = 0.0;
      } else {
        BooleanBow without = x;
        without.set(*id, false);
        score = base - model_confidence(model, without, predicted);
      }
    } else {
      BooleanBow alone(model.vocab_size());
      alone.set(*id);
      score = base - model_confidence(model, alone, predicted);
    }
    by_word.emplace(*id, score);
    raw[k] = score;
  }
  map.scores = min_max_normalize(raw);
  return map;
}

std::vector<AttentionMap> tam_batch(const Model& model,
                                    std::span<const std::vector<std::optional<std::size_t>>> docs,
                                    AttentionMode mode, std::size_t threads) {
  if (mode == AttentionMode::kHuman) {
    throw std::invalid_argument("tam_batch: mode must be comprehensiveness or sufficiency");
  }
  std::vector<AttentionMap> out(docs.size());
  const std::size_t workers = std::max<std::size_t>(1, std::min(threads, docs.size()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < docs.size(); ++i) out[i] = tam(model, docs[i], mode);
    return out;
  }
  std::vector<std::jthread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < docs.size(); i += workers) out[i] = tam(model, docs[i], mode);
    });
  }
  pool.clear();
  return out;
}

}  // namespace tmprune
