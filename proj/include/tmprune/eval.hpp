#pragma once

// Agreement between human and machine attention maps, and accuracy.
//
// The per-document distance is the mean absolute per-token difference, so it
// lies in [0, 1] for maps with entries in [0, 1]:
//   pair_sim             = 1 - mean |h - m|
//   pair_sim_sufficiency =     mean |h - m|
// The sufficiency form is a distance (identical maps give 0); reports carry
// both it and its complement, labeled.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "tmprune/dataset.hpp"
#include "tmprune/explain.hpp"
#include "tmprune/tsetlin.hpp"

namespace tmprune {

enum class SimilarityMetric { kComprehensiveness, kSufficiency };

std::string_view metric_name(SimilarityMetric metric);
SimilarityMetric parse_metric(std::string_view name);

// Both throw std::invalid_argument on length mismatch or empty maps.
double pair_sim(std::span<const double> ham, std::span<const double> mam);
double pair_sim_sufficiency(std::span<const double> ham, std::span<const double> mam);
double pair_similarity(SimilarityMetric metric, std::span<const double> ham,
                       std::span<const double> mam);

// Mean over documents of the metric's pair function. `hams[i]` and `maps[i]`
// belong to document i.
double sim_measure(std::span<const AttentionMap> hams, std::span<const AttentionMap> maps,
                   SimilarityMetric metric);

// Fraction of documents whose prediction equals the label; throws DataError
// on an empty dataset.
double accuracy(const Model& model, std::span<const LabeledBow> data, std::size_t threads = 1);

// One set of per-document maps: a human annotator or a model variant.
struct NamedMaps {
  std::string name;
  std::optional<double> prune_fraction;  // model variants only
  std::vector<AttentionMap> maps;
};

struct SimilarityReport {
  SimilarityMetric metric = SimilarityMetric::kComprehensiveness;
  std::string dataset;
  std::vector<std::string> annotators;  // column labels
  // Row labels: annotators first, then machine variants.
  std::vector<std::string> rows;
  std::vector<std::optional<double>> row_prune_fraction;
  std::vector<bool> row_is_human;
  // values[row][annotator] using the metric's pair function.
  std::vector<std::vector<double>> values;

  std::string to_csv() const;
  nlohmann::ordered_json to_json() const;
  // Fixed-width text table, three decimals.
  std::string to_text() const;
};

SimilarityReport pairwise_table(std::span<const NamedMaps> annotators,
                                std::span<const NamedMaps> machine, SimilarityMetric metric,
                                std::string dataset_tag);

}  // namespace tmprune
