#include "tmprune/tsetlin.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

#include "tmprune/error.hpp"
#include "tmprune/simd.hpp"

namespace tmprune {

// ---- BooleanBow -----------------------------------------------------------

BooleanBow::BooleanBow(std::size_t size) : size_(size), words_(words_for_bits(size), 0) {}

BooleanBow BooleanBow::from_bits(std::span<const std::uint8_t> bits) {
  BooleanBow bow(bits.size());
  for (std::size_t k = 0; k < bits.size(); ++k) {
    if (bits[k] > 1) {
      throw std::invalid_argument("BooleanBow: entry " + std::to_string(k) + " is not 0 or 1");
    }
    if (bits[k] != 0) bow.set(k);
  }
  return bow;
}

bool BooleanBow::test(std::size_t k) const {
  if (k >= size_) throw std::out_of_range("BooleanBow::test: index out of range");
  return (words_[k / 64] >> (k % 64)) & 1u;
}

void BooleanBow::set(std::size_t k, bool value) {
  if (k >= size_) throw std::out_of_range("BooleanBow::set: index out of range");
  const std::uint64_t bit = std::uint64_t{1} << (k % 64);
  if (value) {
    words_[k / 64] |= bit;
  } else {
    words_[k / 64] &= ~bit;
  }
}

std::size_t BooleanBow::count() const noexcept {
  std::size_t total = 0;
  for (std::uint64_t w : words_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

// ---- ModelConfig ----------------------------------------------------------

void ModelConfig::validate() const {
  if (num_classes < 2) throw ConfigError("num_classes must be >= 2");
  if (clauses_per_class < 2 || clauses_per_class % 2 != 0) {
    throw ConfigError("clauses_per_class must be an even integer >= 2");
  }
  if (num_states < 2 || num_states > 256 || num_states % 2 != 0) {
    throw ConfigError("num_states must be even and in [2, 256]");
  }
  if (vote_clip_t <= 0) throw ConfigError("vote_clip_t must be positive");
  if (!(specificity_s > 1.0)) throw ConfigError("specificity_s must be > 1");
}

bool ModelConfig::same_shape_and_hyperparameters(const ModelConfig& other) const noexcept {
  return num_classes == other.num_classes && clauses_per_class == other.clauses_per_class &&
         num_states == other.num_states && vote_clip_t == other.vote_clip_t &&
         specificity_s == other.specificity_s;
}

// ---- Model ----------------------------------------------------------------

Model::Model(ModelConfig config, std::size_t vocab_size, std::uint64_t vocab_fingerprint)
    : config_(config),
      vocab_size_(vocab_size),
      vocab_fingerprint_(vocab_fingerprint),
      mask_words_(words_for_bits(vocab_size)) {
  config_.validate();
  if (vocab_size == 0) throw ConfigError("vocabulary size must be positive");
  const std::size_t clauses = config_.total_clauses();
  states_.assign(clauses * literal_count(),
                 static_cast<std::uint8_t>(config_.include_threshold() - 1));
  include_original_.assign(clauses * mask_words_, 0);
  include_negated_.assign(clauses * mask_words_, 0);
  include_counts_.assign(clauses, 0);
}

Model Model::from_states(ModelConfig config, std::size_t vocab_size,
                         std::uint64_t vocab_fingerprint, std::vector<std::uint8_t> states) {
  Model model(config, vocab_size, vocab_fingerprint);
  if (states.size() != model.states_.size()) {
    throw FormatError("state matrix has " + std::to_string(states.size()) +
                      " entries, expected " + std::to_string(model.states_.size()));
  }
  const std::uint8_t max_state = model.config_.max_state();
  for (std::uint8_t s : states) {
    if (s > max_state) throw FormatError("state exceeds num_states - 1");
  }
  model.states_ = std::move(states);
  const std::uint8_t threshold = model.config_.include_threshold();
  for (std::size_t c = 0; c < model.num_clauses(); ++c) {
    for (std::size_t j = 0; j < model.literal_count(); ++j) {
      if (model.states_[c * model.literal_count() + j] >= threshold) {
        model.refresh_bit(c, j, false);
      }
    }
  }
  return model;
}

std::uint8_t Model::state(std::size_t clause, std::size_t literal) const {
  if (clause >= num_clauses() || literal >= literal_count()) {
    throw std::out_of_range("Model::state: index out of range");
  }
  return states_[clause * literal_count() + literal];
}

bool Model::includes(std::size_t clause, std::size_t literal) const {
  return state(clause, literal) >= config_.include_threshold();
}

void Model::set_state(std::size_t clause, std::size_t literal, std::uint8_t value) {
  if (value > config_.max_state()) throw std::out_of_range("Model::set_state: state too large");
  const bool was_included = includes(clause, literal);
  states_[clause * literal_count() + literal] = value;
  refresh_bit(clause, literal, was_included);
}

std::uint8_t Model::increment(std::size_t clause, std::size_t literal) {
  std::uint8_t& s = states_[clause * literal_count() + literal];
  if (s < config_.max_state()) {
    ++s;
    if (s == config_.include_threshold()) refresh_bit(clause, literal, false);
  }
  return s;
}

std::uint8_t Model::decrement(std::size_t clause, std::size_t literal) {
  std::uint8_t& s = states_[clause * literal_count() + literal];
  if (s > 0) {
    --s;
    if (s + 1 == config_.include_threshold()) refresh_bit(clause, literal, true);
  }
  return s;
}

void Model::refresh_bit(std::size_t clause, std::size_t literal, bool was_included) {
  const bool now_included =
      states_[clause * literal_count() + literal] >= config_.include_threshold();
  if (now_included == was_included) return;
  const std::size_t word = literal / 2;
  auto& masks = literal % 2 == 0 ? include_original_ : include_negated_;
  std::uint64_t& target = masks[clause * mask_words_ + word / 64];
  const std::uint64_t bit = std::uint64_t{1} << (word % 64);
  if (now_included) {
    target |= bit;
    ++include_counts_[clause];
  } else {
    target &= ~bit;
    --include_counts_[clause];
  }
}

std::span<const std::uint8_t> Model::row(std::size_t clause) const {
  if (clause >= num_clauses()) throw std::out_of_range("Model::row: clause out of range");
  return std::span<const std::uint8_t>(states_).subspan(clause * literal_count(),
                                                        literal_count());
}

ClauseView Model::clause(std::size_t id) const {
  if (id >= num_clauses()) throw std::out_of_range("Model::clause: clause out of range");
  const std::size_t position = id % config_.clauses_per_class;
  return ClauseView{
      id,
      id / config_.clauses_per_class,
      clause_polarity(position),
      row(id),
      std::span<const std::uint64_t>(include_original_).subspan(id * mask_words_, mask_words_),
      std::span<const std::uint64_t>(include_negated_).subspan(id * mask_words_, mask_words_),
      include_counts_[id],
  };
}

bool operator==(const Model& a, const Model& b) {
  return a.config_.same_shape_and_hyperparameters(b.config_) && a.vocab_size_ == b.vocab_size_ &&
         a.vocab_fingerprint_ == b.vocab_fingerprint_ && a.states_ == b.states_;
}

// ---- inference ------------------------------------------------------------

bool evaluate_clause(const ClauseView& clause, const BooleanBow& x, ClauseMode mode) {
  if (clause.include_original.size() != x.words().size()) {
    throw std::invalid_argument("evaluate_clause: clause width " +
                                std::to_string(clause.states.size() / 2) +
                                " does not match input size " + std::to_string(x.size()));
  }
  if (clause.empty()) return mode == ClauseMode::kTraining;
  return simd::clause_matches(clause.include_original, clause.include_negated, x.words());
}

bool evaluate_clause(const Model& model, std::size_t clause, const BooleanBow& x,
                     ClauseMode mode) {
  if (x.size() != model.vocab_size()) {
    throw std::invalid_argument("evaluate_clause: input size " + std::to_string(x.size()) +
                                " does not match vocabulary size " +
                                std::to_string(model.vocab_size()));
  }
  return evaluate_clause(model.clause(clause), x, mode);
}

int class_score_raw(const Model& model, const BooleanBow& x, std::size_t class_index,
                    ClauseMode mode) {
  const ModelConfig& cfg = model.config();
  if (class_index >= cfg.num_classes) {
    throw std::out_of_range("class index " + std::to_string(class_index) + " out of range");
  }
  if (x.size() != model.vocab_size()) {
    throw std::invalid_argument("input size " + std::to_string(x.size()) +
                                " does not match vocabulary size " +
                                std::to_string(model.vocab_size()));
  }
  const simd::KernelTable& kernels = simd::active_kernels();
  const std::size_t first = class_index * cfg.clauses_per_class;
  int score = 0;
  for (std::size_t c = first; c < first + cfg.clauses_per_class; ++c) {
    const ClauseView view = model.clause(c);
    bool fires;
    if (view.empty()) {
      fires = mode == ClauseMode::kTraining;
    } else {
      fires = kernels.clause_matches(view.include_original.data(), view.include_negated.data(),
                                     x.words().data(), x.words().size());
    }
    if (fires) score += view.polarity;
  }
  return score;
}

int class_score(const Model& model, const BooleanBow& x, std::size_t class_index) {
  const int t = model.config().vote_clip_t;
  return std::clamp(class_score_raw(model, x, class_index), -t, t);
}

std::vector<int> class_scores(const Model& model, const BooleanBow& x) {
  std::vector<int> scores(model.config().num_classes);
  for (std::size_t c = 0; c < scores.size(); ++c) scores[c] = class_score(model, x, c);
  return scores;
}

std::size_t predict(const Model& model, const BooleanBow& x) {
  const std::vector<int> scores = class_scores(model, x);
  // max_element returns the first maximum, which is the lowest index.
  return static_cast<std::size_t>(std::max_element(scores.begin(), scores.end()) -
                                  scores.begin());
}

ClauseLiterals clause_literals(const Model& model, std::size_t clause) {
  if (clause >= model.num_clauses()) {
    throw std::out_of_range("clause id " + std::to_string(clause) + " out of range");
  }
  ClauseLiterals out;
  const auto row = model.row(clause);
  const std::uint8_t threshold = model.config().include_threshold();
  for (std::size_t k = 0; k < model.vocab_size(); ++k) {
    if (row[2 * k] >= threshold) out.original.push_back(k);
    if (row[2 * k + 1] >= threshold) out.negated.push_back(k);
  }
  return out;
}

}  // namespace tmprune
