#pragma once

// Tsetlin Machine over a Boolean bag-of-words.
//
// Clauses are stored class-major: global clause id = class * clauses_per_class
// + position. Even positions (0, 2, ...) vote for their class, odd positions
// vote against it. Each clause owns 2n automata; literal id 2k is the original
// form of vocabulary word k, literal id 2k+1 its negation. Automata states are
// kept as bytes alongside bit-packed include masks so clause matching is a
// handful of word-wide AND/ANDNOT operations.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <utility>
#include <vector>

namespace tmprune {

// Binary presence vector over the vocabulary, bit-packed in 64-bit words.
class BooleanBow {
 public:
  BooleanBow() = default;
  explicit BooleanBow(std::size_t size);

  // Entries must be 0 or 1.
  static BooleanBow from_bits(std::span<const std::uint8_t> bits);

  std::size_t size() const noexcept { return size_; }
  bool test(std::size_t k) const;
  void set(std::size_t k, bool value = true);
  std::size_t count() const noexcept;

  std::span<const std::uint64_t> words() const noexcept { return words_; }

  friend bool operator==(const BooleanBow&, const BooleanBow&) = default;

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

inline std::size_t words_for_bits(std::size_t bits) { return (bits + 63) / 64; }

struct ModelConfig {
  std::size_t num_classes = 2;
  std::size_t clauses_per_class = 200;
  // Automata per literal have states [0, num_states); the include threshold
  // is num_states / 2. At most 256 so states fit a byte.
  std::size_t num_states = 256;
  int vote_clip_t = 20;
  double specificity_s = 5.0;
  std::uint64_t seed = 42;

  // Throws ConfigError on any violated constraint.
  void validate() const;

  std::uint8_t include_threshold() const noexcept {
    return static_cast<std::uint8_t>(num_states / 2);
  }
  std::uint8_t max_state() const noexcept {
    return static_cast<std::uint8_t>(num_states - 1);
  }
  std::size_t total_clauses() const noexcept { return num_classes * clauses_per_class; }

  // Equality ignores the training seed; it is not part of the model.
  bool same_shape_and_hyperparameters(const ModelConfig& other) const noexcept;
};

enum class ClauseMode {
  // Empty clauses output 1 so they can bootstrap.
  kTraining,
  // Empty clauses output 0 and never vote.
  kInference,
};

// Read-only view of one clause row.
struct ClauseView {
  std::size_t id;
  std::size_t class_index;
  int polarity;  // +1 or -1
  std::span<const std::uint8_t> states;
  std::span<const std::uint64_t> include_original;
  std::span<const std::uint64_t> include_negated;
  std::size_t include_count;

  bool empty() const noexcept { return include_count == 0; }
};

class Model {
 public:
  // Fresh model: every automaton one step below the include threshold, so
  // every clause starts empty.
  Model(ModelConfig config, std::size_t vocab_size, std::uint64_t vocab_fingerprint);

  // Rebuilds a model from a row-major (clauses x 2n) state matrix.
  static Model from_states(ModelConfig config, std::size_t vocab_size,
                           std::uint64_t vocab_fingerprint, std::vector<std::uint8_t> states);

  const ModelConfig& config() const noexcept { return config_; }
  std::size_t vocab_size() const noexcept { return vocab_size_; }
  std::size_t literal_count() const noexcept { return 2 * vocab_size_; }
  std::size_t num_clauses() const noexcept { return config_.total_clauses(); }
  std::uint64_t vocab_fingerprint() const noexcept { return vocab_fingerprint_; }

  std::uint8_t state(std::size_t clause, std::size_t literal) const;
  // Keeps the include masks in sync with the state.
  void set_state(std::size_t clause, std::size_t literal, std::uint8_t value);
  bool includes(std::size_t clause, std::size_t literal) const;

  std::span<const std::uint8_t> states() const noexcept { return states_; }
  std::span<const std::uint8_t> row(std::size_t clause) const;

  ClauseView clause(std::size_t id) const;

  // Saturating single-step moves; return the new state.
  std::uint8_t increment(std::size_t clause, std::size_t literal);
  std::uint8_t decrement(std::size_t clause, std::size_t literal);

  // Same shape, hyperparameters, fingerprint and states.
  friend bool operator==(const Model& a, const Model& b);

 private:
  void refresh_bit(std::size_t clause, std::size_t literal, bool was_included);

  ModelConfig config_;
  std::size_t vocab_size_;
  std::uint64_t vocab_fingerprint_;
  std::size_t mask_words_;
  std::vector<std::uint8_t> states_;
  std::vector<std::uint64_t> include_original_;
  std::vector<std::uint64_t> include_negated_;
  std::vector<std::uint32_t> include_counts_;
};

inline int clause_polarity(std::size_t position_in_class) {
  return position_in_class % 2 == 0 ? +1 : -1;
}

bool evaluate_clause(const ClauseView& clause, const BooleanBow& x,
                     ClauseMode mode = ClauseMode::kInference);
bool evaluate_clause(const Model& model, std::size_t clause, const BooleanBow& x,
                     ClauseMode mode = ClauseMode::kInference);

// Net vote of positive minus negative clauses, before clipping.
int class_score_raw(const Model& model, const BooleanBow& x, std::size_t class_index,
                    ClauseMode mode = ClauseMode::kInference);
// Net vote clipped to [-T, T].
int class_score(const Model& model, const BooleanBow& x, std::size_t class_index);
std::vector<int> class_scores(const Model& model, const BooleanBow& x);

// Argmax over clipped class scores; ties go to the lowest class index.
std::size_t predict(const Model& model, const BooleanBow& x);

struct ClauseLiterals {
  std::vector<std::size_t> original;  // word indices k with x_k included
  std::vector<std::size_t> negated;   // word indices k with not-x_k included
};
ClauseLiterals clause_literals(const Model& model, std::size_t clause);

// ---- training -------------------------------------------------------------

using Rng = std::mt19937_64;

// Uniform double in [0, 1) built from the top 53 bits of one draw, so results
// only depend on the engine, not on the standard library's distributions.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Type I feedback on one clause whose output (training mode) is
// `clause_output`. Output 1: literals that are true move toward include with
// probability (s-1)/s, literals that are false move toward exclude with
// probability 1/s. Output 0: every literal moves toward exclude with
// probability 1/s.
void type_i_feedback(Model& model, std::size_t clause, const BooleanBow& x,
                     bool clause_output, Rng& rng);

// Type II feedback: on output 1, every excluded literal that is false moves
// one step toward include. Output 0 leaves the clause untouched.
void type_ii_feedback(Model& model, std::size_t clause, const BooleanBow& x,
                      bool clause_output);

struct LabeledBow {
  BooleanBow x;
  std::size_t label;
};

struct FitOptions {
  std::size_t epochs = 1;
  std::uint64_t seed = 42;
  bool shuffle = true;
};

// Called after every epoch with the 1-based epoch number.
using EpochCallback = std::function<void(std::size_t epoch, const Model&)>;

// Trains sequentially, one sample at a time, single-threaded. The result is
// a pure function of (model, data, options).
Model fit(Model model, std::span<const LabeledBow> data, const FitOptions& options,
          const EpochCallback& on_epoch = {});

// One sample's worth of feedback to the true class and one sampled negative
// class. Exposed for tests and custom training loops.
void train_sample(Model& model, const BooleanBow& x, std::size_t label, Rng& rng);

}  // namespace tmprune
