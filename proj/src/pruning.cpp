#include "tmprune/pruning.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "tmprune/simd.hpp"
#include "tmprune/text.hpp"

namespace tmprune {
namespace {

void check_fraction(double fraction) {
  if (!(fraction >= 0.0 && fraction <= 0.5)) {
    throw std::invalid_argument("prune fraction " + std::to_string(fraction) +
                                " outside [0, 0.5]");
  }
}

std::vector<std::size_t> clause_sizes(const Model& model) {
  std::vector<std::size_t> sizes(model.num_clauses());
  for (std::size_t c = 0; c < sizes.size(); ++c) sizes[c] = model.clause(c).include_count;
  return sizes;
}

}  // namespace

std::uint64_t LiteralFrequencyTable::total() const noexcept {
  return std::accumulate(count.begin(), count.end(), std::uint64_t{0});
}

std::vector<double> PruneReport::percent_reduction() const {
  std::vector<double> out(literals_before.size(), 0.0);
  for (std::size_t c = 0; c < out.size(); ++c) {
    if (literals_before[c] == 0) continue;
    out[c] = 100.0 * static_cast<double>(literals_before[c] - literals_after[c]) /
             static_cast<double>(literals_before[c]);
  }
  return out;
}

LiteralFrequencyTable literal_frequencies(const Model& model) {
  LiteralFrequencyTable table;
  table.count.assign(model.literal_count(), 0);
  const simd::KernelTable& kernels = simd::active_kernels();
  const std::uint8_t threshold = model.config().include_threshold();
  for (std::size_t c = 0; c < model.num_clauses(); ++c) {
    const auto row = model.row(c);
    kernels.count_includes(row.data(), row.size(), threshold, table.count.data());
  }
  return table;
}

std::vector<std::size_t> rank_literals(const LiteralFrequencyTable& table) {
  std::vector<std::size_t> ranked;
  for (std::size_t j = 0; j < table.count.size(); ++j) {
    if (table.count[j] > 0) ranked.push_back(j);
  }
  std::stable_sort(ranked.begin(), ranked.end(), [&](std::size_t a, std::size_t b) {
    return table.count[a] < table.count[b];
  });
  return ranked;
}

std::size_t prune_count(double fraction, std::size_t ranked) {
  check_fraction(fraction);
  const double exact = fraction * static_cast<double>(ranked);
  return std::min(ranked, static_cast<std::size_t>(std::floor(exact + 1e-9)));
}

PruneResult prune(const Model& model, double fraction) {
  check_fraction(fraction);
  const std::vector<std::size_t> ranked = rank_literals(literal_frequencies(model));
  const std::size_t m = prune_count(fraction, ranked.size());

  PruneReport report;
  report.fraction = fraction;
  report.ranked_literals = ranked.size();
  report.pruned.assign(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(m));
  report.literals_before = clause_sizes(model);

  Model pruned = model;
  for (std::size_t literal : report.pruned) {
    for (std::size_t c = 0; c < pruned.num_clauses(); ++c) pruned.set_state(c, literal, 0);
  }
  report.literals_after = clause_sizes(pruned);
  return PruneResult{std::move(pruned), std::move(report)};
}

std::vector<std::pair<double, Model>> prune_sweep(const Model& model,
                                                  std::span<const double> fractions) {
  for (double f : fractions) check_fraction(f);
  std::vector<std::pair<double, Model>> out;
  out.reserve(fractions.size());
  for (double f : fractions) out.emplace_back(f, prune(model, f).model);
  return out;
}

std::string literal_name(std::size_t literal, const Vocabulary& vocab) {
  const std::string& word = vocab.word(literal / 2);
  return literal % 2 == 0 ? word : "¬" + word;
}

nlohmann::ordered_json prune_report_to_json(const PruneReport& report, const Vocabulary* vocab) {
  nlohmann::ordered_json j;
  j["fraction"] = report.fraction;
  j["ranked_literals"] = report.ranked_literals;
  j["pruned_count"] = report.pruned.size();
  j["pruned_literal_ids"] = report.pruned;
  if (vocab != nullptr) {
    std::vector<std::string> names;
    for (std::size_t literal : report.pruned) names.push_back(literal_name(literal, *vocab));
    j["pruned_literals"] = names;
  }
  const auto reduction = report.percent_reduction();
  nlohmann::ordered_json clauses = nlohmann::ordered_json::array();
  for (std::size_t c = 0; c < report.literals_before.size(); ++c) {
    clauses.push_back({{"clause", c},
                       {"literals_before", report.literals_before[c]},
                       {"literals_after", report.literals_after[c]},
                       {"percent_reduction", reduction[c]}});
  }
  j["clauses"] = std::move(clauses);
  return j;
}

}  // namespace tmprune
