#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

#include "tmprune/error.hpp"
#include "tmprune/tsetlin.hpp"

namespace tmprune {

void type_i_feedback(Model& model, std::size_t clause, const BooleanBow& x,
                     bool clause_output, Rng& rng) {
  const double s = model.config().specificity_s;
  const double p_weaken = 1.0 / s;
  const double p_reinforce = (s - 1.0) / s;
  const std::size_t n = model.vocab_size();
  if (!clause_output) {
    for (std::size_t j = 0; j < 2 * n; ++j) {
      if (uniform01(rng) < p_weaken) model.decrement(clause, j);
    }
    return;
  }
  for (std::size_t k = 0; k < n; ++k) {
    const bool present = x.test(k);
    // Original literal is true when the word is present, negated when absent.
    const std::size_t true_literal = present ? 2 * k : 2 * k + 1;
    const std::size_t false_literal = present ? 2 * k + 1 : 2 * k;
    if (uniform01(rng) < p_reinforce) model.increment(clause, true_literal);
    if (uniform01(rng) < p_weaken) model.decrement(clause, false_literal);
  }
}

void type_ii_feedback(Model& model, std::size_t clause, const BooleanBow& x,
                      bool clause_output) {
  if (!clause_output) return;
  const std::size_t n = model.vocab_size();
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t false_literal = x.test(k) ? 2 * k + 1 : 2 * k;
    if (!model.includes(clause, false_literal)) model.increment(clause, false_literal);
  }
}

namespace {

void feed_class(Model& model, const BooleanBow& x, std::size_t class_index, bool is_target,
                Rng& rng) {
  const ModelConfig& cfg = model.config();
  const int t = cfg.vote_clip_t;
  const int score =
      std::clamp(class_score_raw(model, x, class_index, ClauseMode::kTraining), -t, t);
  const double p_update = is_target ? static_cast<double>(t - score) / (2.0 * t)
                                    : static_cast<double>(t + score) / (2.0 * t);
  const std::size_t first = class_index * cfg.clauses_per_class;
  for (std::size_t c = first; c < first + cfg.clauses_per_class; ++c) {
    if (!(uniform01(rng) < p_update)) continue;
    const bool output = evaluate_clause(model.clause(c), x, ClauseMode::kTraining);
    const bool positive = clause_polarity(c - first) > 0;
    // Target class: positive clauses learn the pattern, negative clauses
    // reject it. Sampled negative class: the roles swap.
    if (positive == is_target) {
      type_i_feedback(model, c, x, output, rng);
    } else {
      type_ii_feedback(model, c, x, output);
    }
  }
}

}  // namespace

void train_sample(Model& model, const BooleanBow& x, std::size_t label, Rng& rng) {
  const std::size_t classes = model.config().num_classes;
  if (label >= classes) {
    throw DataError("label " + std::to_string(label) + " out of range for " +
                    std::to_string(classes) + " classes");
  }
  if (x.size() != model.vocab_size()) {
    throw std::invalid_argument("train_sample: input size does not match vocabulary size");
  }
  feed_class(model, x, label, true, rng);
  std::size_t negative = static_cast<std::size_t>(rng() % (classes - 1));
  if (negative >= label) ++negative;
  feed_class(model, x, negative, false, rng);
}

Model fit(Model model, std::span<const LabeledBow> data, const FitOptions& options,
          const EpochCallback& on_epoch) {
  if (options.epochs == 0) return model;
  if (data.empty()) throw DataError("cannot train on an empty dataset");
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (data[i].label >= model.config().num_classes) {
      throw DataError("sample " + std::to_string(i) + ": label " +
                      std::to_string(data[i].label) + " out of range");
    }
    if (data[i].x.size() != model.vocab_size()) {
      throw DataError("sample " + std::to_string(i) + ": input size does not match vocabulary");
    }
  }
  Rng rng(options.seed);
  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (std::size_t epoch = 1; epoch <= options.epochs; ++epoch) {
    if (options.shuffle) {
      // Fisher-Yates on our own draws keeps the order independent of the
      // standard library's shuffle.
      for (std::size_t i = order.size(); i > 1; --i) {
        std::swap(order[i - 1], order[static_cast<std::size_t>(rng() % i)]);
      }
    }
    for (std::size_t idx : order) train_sample(model, data[idx].x, data[idx].label, rng);
    if (on_epoch) on_epoch(epoch, model);
  }
  return model;
}

}  // namespace tmprune
