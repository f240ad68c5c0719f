#pragma once

// Brute-force references used only by tests. None of these touch the
// library's bit masks or kernels: they work from plain state vectors, sets
// and loops.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "tmprune/tsetlin.hpp"

namespace oracle {

struct LiteralSets {
  std::set<std::size_t> original;
  std::set<std::size_t> negated;
};

// Include sets read directly from a raw state row (2n entries).
inline LiteralSets literal_sets(const std::vector<int>& row, int threshold) {
  LiteralSets sets;
  for (std::size_t j = 0; j < row.size(); ++j) {
    if (row[j] < threshold) continue;
    if (j % 2 == 0) {
      sets.original.insert(j / 2);
    } else {
      sets.negated.insert(j / 2);
    }
  }
  return sets;
}

// Conjunction over explicit sets; empty clause -> 0 (inference convention).
inline bool conjunction(const LiteralSets& sets, const std::vector<int>& x) {
  if (sets.original.empty() && sets.negated.empty()) return false;
  for (std::size_t k : sets.original) {
    if (x[k] != 1) return false;
  }
  for (std::size_t k : sets.negated) {
    if (x[k] != 0) return false;
  }
  return true;
}

// A model as a plain matrix of ints, clause-major.
struct PlainModel {
  std::size_t classes;
  std::size_t clauses_per_class;
  std::size_t n;
  int threshold;
  int clip;
  std::vector<std::vector<int>> rows;
};

inline PlainModel plain(const tmprune::Model& m) {
  PlainModel p{m.config().num_classes, m.config().clauses_per_class, m.vocab_size(),
               m.config().include_threshold(), m.config().vote_clip_t, {}};
  for (std::size_t c = 0; c < m.num_clauses(); ++c) {
    auto row = m.row(c);
    p.rows.emplace_back(row.begin(), row.end());
  }
  return p;
}

// Unclipped: sum over 1-based odd positions minus 1-based even positions.
inline int raw_score(const PlainModel& m, const std::vector<int>& x, std::size_t cls) {
  int score = 0;
  for (std::size_t iota = 1; iota <= m.clauses_per_class; ++iota) {
    const auto& row = m.rows[cls * m.clauses_per_class + iota - 1];
    const int out = conjunction(literal_sets(row, m.threshold), x) ? 1 : 0;
    score += (iota % 2 == 1) ? out : -out;
  }
  return score;
}

inline int clipped_score(const PlainModel& m, const std::vector<int>& x, std::size_t cls) {
  return std::max(-m.clip, std::min(m.clip, raw_score(m, x, cls)));
}

inline std::size_t argmax(const PlainModel& m, const std::vector<int>& x) {
  std::size_t best = 0;
  int best_score = clipped_score(m, x, 0);
  for (std::size_t c = 1; c < m.classes; ++c) {
    const int s = clipped_score(m, x, c);
    if (s > best_score) {
      best = c;
      best_score = s;
    }
  }
  return best;
}

// Double loop over clauses and literals.
inline std::vector<std::uint32_t> naive_counts(const PlainModel& m) {
  std::vector<std::uint32_t> counts(2 * m.n, 0);
  for (const auto& row : m.rows) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (row[j] >= m.threshold) ++counts[j];
    }
  }
  return counts;
}

// Comparison sort of (count, id) pairs, zero counts dropped.
inline std::vector<std::size_t> reference_rank(const std::vector<std::uint32_t>& counts) {
  std::vector<std::pair<std::uint32_t, std::size_t>> pairs;
  for (std::size_t j = 0; j < counts.size(); ++j) {
    if (counts[j] > 0) pairs.emplace_back(counts[j], j);
  }
  std::sort(pairs.begin(), pairs.end());
  std::vector<std::size_t> out;
  for (auto& p : pairs) out.push_back(p.second);
  return out;
}

// Set-membership vectorizer.
inline std::vector<int> set_vectorize(const std::vector<std::string>& tokens,
                                      const std::vector<std::string>& words) {
  std::set<std::string> present(tokens.begin(), tokens.end());
  std::vector<int> x(words.size(), 0);
  for (std::size_t k = 0; k < words.size(); ++k) x[k] = present.count(words[k]) ? 1 : 0;
  return x;
}

inline double naive_pair_sim(const std::vector<double>& h, const std::vector<double>& m) {
  double sum = 0.0;
  for (std::size_t k = 0; k < h.size(); ++k) sum += h[k] > m[k] ? h[k] - m[k] : m[k] - h[k];
  return 1.0 - sum / static_cast<double>(h.size());
}

// Exact distribution of one saturating automaton that steps up with
// probability `up` and down with probability `down` (disjoint events per
// step), after `steps` steps from `start`. Returns E[state].
inline double chain_expectation(int start, int max_state, double up, double down, int steps) {
  std::vector<double> p(static_cast<std::size_t>(max_state) + 1, 0.0);
  p[static_cast<std::size_t>(start)] = 1.0;
  for (int t = 0; t < steps; ++t) {
    std::vector<double> next(p.size(), 0.0);
    for (std::size_t s = 0; s < p.size(); ++s) {
      if (p[s] == 0.0) continue;
      const std::size_t hi = std::min<std::size_t>(s + 1, static_cast<std::size_t>(max_state));
      const std::size_t lo = s == 0 ? 0 : s - 1;
      next[hi] += p[s] * up;
      next[lo] += p[s] * down;
      next[s] += p[s] * (1.0 - up - down);
    }
    p = std::move(next);
  }
  double mean = 0.0;
  for (std::size_t s = 0; s < p.size(); ++s) mean += static_cast<double>(s) * p[s];
  return mean;
}

inline std::vector<int> to_ints(const tmprune::BooleanBow& x) {
  std::vector<int> v(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) v[k] = x.test(k) ? 1 : 0;
  return v;
}

inline tmprune::BooleanBow to_bow(const std::vector<int>& v) {
  std::vector<std::uint8_t> bits(v.begin(), v.end());
  return tmprune::BooleanBow::from_bits(bits);
}

// Random state matrix where each literal is included with probability
// `include_p`; included states uniform in [threshold, max], excluded in
// [0, threshold).
inline tmprune::Model random_model(std::mt19937_64& rng, tmprune::ModelConfig cfg, std::size_t n,
                                   double include_p) {
  std::vector<std::uint8_t> states(cfg.total_clauses() * 2 * n);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int thr = cfg.num_states / 2;
  std::uniform_int_distribution<int> hi(thr, static_cast<int>(cfg.num_states) - 1);
  std::uniform_int_distribution<int> lo(0, thr - 1);
  for (auto& s : states) s = static_cast<std::uint8_t>(u(rng) < include_p ? hi(rng) : lo(rng));
  return tmprune::Model::from_states(cfg, n, 0x1234, std::move(states));
}

}  // namespace oracle
