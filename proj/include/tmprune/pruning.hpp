#pragma once

// Post-hoc literal pruning by in-model frequency.
//
// A literal's frequency is the number of clauses, over all classes, that
// currently include it. Literals that appear somewhere are ranked least
// frequent first and the bottom fraction is forced to state 0 in every
// clause. Literals no clause includes are never ranked, so the fraction is
// taken over literals the model actually uses.

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include <json.hpp>

#include "tmprune/tsetlin.hpp"

namespace tmprune {

class Vocabulary;

struct LiteralFrequencyTable {
  std::vector<std::uint32_t> count;  // length 2n, indexed by literal id

  std::uint64_t total() const noexcept;
};

struct PruneReport {
  double fraction = 0.0;
  std::size_t ranked_literals = 0;   // literals with count > 0
  std::vector<std::size_t> pruned;   // literal ids, in ranking order
  std::vector<std::size_t> literals_before;  // per clause
  std::vector<std::size_t> literals_after;   // per clause

  // Per clause 100 * (before - after) / before; 0 for clauses that were
  // already empty.
  std::vector<double> percent_reduction() const;
};

struct PruneResult {
  Model model;
  PruneReport report;
};

LiteralFrequencyTable literal_frequencies(const Model& model);

// Ascending by count, ties by ascending literal id; zero counts dropped.
std::vector<std::size_t> rank_literals(const LiteralFrequencyTable& table);

// Number of literals pruned out of `ranked` at `fraction`: floor(fraction *
// ranked), with a 1e-9 guard so that e.g. 0.29 * 100 yields 29.
std::size_t prune_count(double fraction, std::size_t ranked);

// Throws std::invalid_argument unless 0 <= fraction <= 0.5. The input model
// is not modified.
PruneResult prune(const Model& model, double fraction);

// Independent prunes of the same base model.
std::vector<std::pair<double, Model>> prune_sweep(const Model& model,
                                                  std::span<const double> fractions);

// Literal display name: "word" or "¬word".
std::string literal_name(std::size_t literal, const Vocabulary& vocab);

// JSON export. Literal names are included when a vocabulary is given.
nlohmann::ordered_json prune_report_to_json(const PruneReport& report,
                                            const Vocabulary* vocab = nullptr);

}  // namespace tmprune
