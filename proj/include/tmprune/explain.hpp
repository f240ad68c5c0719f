#pragma once

// Token-level attention maps from a trained model by perturbing its input.
//
// Confidence for class d is |f_d(x) - sum_{d' != d} f_d'(x)| / (classes * T)
// with every f clipped to [-T, T], which lies in [0, 1] for any input.
// Perturbations act on token positions but reach the model only through the
// Boolean bag-of-words: deleting one occurrence of a repeated word changes
// nothing.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "tmprune/tsetlin.hpp"

namespace tmprune {

enum class AttentionMode { kComprehensiveness, kSufficiency, kHuman };

std::string_view mode_name(AttentionMode mode);
// Accepts "comprehensiveness", "sufficiency", "human"; throws ConfigError.
AttentionMode parse_mode(std::string_view name);

struct AttentionMap {
  std::vector<double> scores;  // one per token, each in [0, 1]
  AttentionMode mode = AttentionMode::kComprehensiveness;
};

AttentionMap human_map(std::span<const std::uint8_t> ham);

// Vocabulary index per token position, nullopt for out-of-vocabulary tokens.
using TokenIds = std::span<const std::optional<std::size_t>>;

double model_confidence(const Model& model, const BooleanBow& x, std::size_t class_index);

// Confidence drop when the tokens at `removed` are deleted.
double comprehensiveness(const Model& model, TokenIds doc, std::span<const std::size_t> removed,
                         std::size_t class_index);

// Confidence drop when only the tokens at `kept` remain.
double sufficiency(const Model& model, TokenIds doc, std::span<const std::size_t> kept,
                   std::size_t class_index);

// Leave-one-out score per token for the predicted class, min-max normalized
// over the document. A constant score vector maps to all zeros.
AttentionMap tam(const Model& model, TokenIds doc, AttentionMode mode);

// tam() over many documents; results are in document order regardless of
// `threads`. threads <= 1 runs on the calling thread.
std::vector<AttentionMap> tam_batch(const Model& model,
                                    std::span<const std::vector<std::optional<std::size_t>>> docs,
                                    AttentionMode mode, std::size_t threads = 1);

// Min-max normalization to [0, 1]; constant input -> zeros.
std::vector<double> min_max_normalize(std::span<const double> values);

}  // namespace tmprune
