#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "planted.hpp"
#include "oracles.hpp"
#include "tmprune/pruning.hpp"
#include "tmprune/text.hpp"

using namespace tmprune;

namespace {

ModelConfig cfg4() {
  ModelConfig cfg;
  cfg.num_classes = 2;
  cfg.clauses_per_class = 2;
  return cfg;
}

}  // namespace

TEST_CASE("literal_frequencies: fresh model is all zero") {
  const Model m(ModelConfig{}, 10, 0);
  const auto table = literal_frequencies(m);
  CHECK(table.count.size() == 20);
  CHECK(table.total() == 0);
  CHECK(rank_literals(table).empty());
}

TEST_CASE("literal_frequencies: hand-built counts") {
  Model m(cfg4(), 3, 0);
  for (std::size_t c : {0u, 1u, 3u}) m.set_state(c, 4, 200);
  m.set_state(2, 1, 128);
  const auto table = literal_frequencies(m);
  CHECK(table.count[4] == 3);
  CHECK(table.count[1] == 1);
  CHECK(table.total() == 4);
}

TEST_CASE("literal_frequencies and rank match naive oracles on random matrices") {
  std::mt19937_64 rng(21);
  ModelConfig cfg;
  cfg.num_classes = 3;
  cfg.clauses_per_class = 10;
  for (int trial = 0; trial < 50; ++trial) {
    const Model m = oracle::random_model(rng, cfg, 1 + rng() % 40, 0.15);
    const auto table = literal_frequencies(m);
    CHECK(table.count == oracle::naive_counts(oracle::plain(m)));
    CHECK(rank_literals(table) == oracle::reference_rank(table.count));
  }
}

TEST_CASE("rank_literals: ascending with ties by id") {
  CHECK(rank_literals({{5, 1, 3}}) == std::vector<std::size_t>{1, 2, 0});
  CHECK(rank_literals({{2, 2}}) == std::vector<std::size_t>{0, 1});
  CHECK(rank_literals({{0, 4, 0, 1}}) == std::vector<std::size_t>{3, 1});
}

TEST_CASE("prune_count floors with a small guard") {
  CHECK(prune_count(0.25, 4) == 1);
  CHECK(prune_count(0.29, 100) == 29);
  CHECK(prune_count(0.5, 3) == 1);
  CHECK(prune_count(0.0, 100) == 0);
  CHECK_THROWS_AS(prune_count(0.51, 10), std::invalid_argument);
}

TEST_CASE("prune: fraction 0 is the identity") {
  std::mt19937_64 rng(1);
  const Model m = oracle::random_model(rng, ModelConfig{}, 30, 0.1);
  const auto result = prune(m, 0.0);
  CHECK(result.model == m);
  CHECK(result.report.pruned.empty());
  CHECK(result.report.literals_before == result.report.literals_after);
}

TEST_CASE("prune: counts [1,4,4,9] at 25% removes exactly the count-1 literal") {
  // Four literals over 9 clauses (class x polarity irrelevant here).
  ModelConfig cfg;
  cfg.num_classes = 3;
  cfg.clauses_per_class = 4;  // 12 clauses
  Model m(cfg, 2, 0);
  const std::size_t counts[4] = {4, 9, 1, 4};
  for (std::size_t j = 0; j < 4; ++j) {
    for (std::size_t c = 0; c < counts[j]; ++c) m.set_state(c, j, 200);
  }
  const auto result = prune(m, 0.25);
  CHECK(result.report.ranked_literals == 4);
  CHECK(result.report.pruned == std::vector<std::size_t>{2});
  for (std::size_t c = 0; c < m.num_clauses(); ++c) {
    CHECK(result.model.state(c, 2) == 0);
    for (std::size_t j : {0u, 1u, 3u}) CHECK(result.model.state(c, j) == m.state(c, j));
  }
  // Input untouched.
  CHECK(m.state(0, 2) == 200);
  CHECK_THROWS_AS(prune(m, 0.6), std::invalid_argument);
  CHECK_THROWS_AS(prune(m, -0.1), std::invalid_argument);
}

TEST_CASE("prune invariants on random matrices") {
  std::mt19937_64 rng(99);
  ModelConfig cfg;
  cfg.num_classes = 2;
  cfg.clauses_per_class = 12;
  for (int trial = 0; trial < 30; ++trial) {
    const Model m = oracle::random_model(rng, cfg, 5 + rng() % 30, 0.05 + 0.2 * (rng() % 3));
    const auto table = literal_frequencies(m);
    const auto ranked = rank_literals(table);
    const double f1 = 0.05 * static_cast<double>(rng() % 11);
    const double f2 = std::min(0.5, f1 + 0.05 * static_cast<double>(rng() % 5));
    const auto r1 = prune(m, f1);
    const auto r2 = prune(m, f2);

    // Recount: every pruned literal is gone.
    const auto recount = literal_frequencies(r2.model);
    for (std::size_t j : r2.report.pruned) CHECK(recount.count[j] == 0);
    // Nestedness (prefix).
    REQUIRE(r1.report.pruned.size() <= r2.report.pruned.size());
    CHECK(std::equal(r1.report.pruned.begin(), r1.report.pruned.end(), r2.report.pruned.begin()));
    // Frequency ordering.
    const std::set<std::size_t> pruned(r2.report.pruned.begin(), r2.report.pruned.end());
    std::uint32_t max_pruned = 0, min_kept = UINT32_MAX;
    for (std::size_t j : ranked) {
      if (pruned.count(j)) {
        max_pruned = std::max(max_pruned, table.count[j]);
      } else {
        min_kept = std::min(min_kept, table.count[j]);
      }
    }
    if (!pruned.empty() && min_kept != UINT32_MAX) CHECK(max_pruned <= min_kept);
    // Untouched columns.
    for (std::size_t c = 0; c < m.num_clauses(); ++c) {
      for (std::size_t j = 0; j < m.literal_count(); ++j) {
        if (!pruned.count(j)) CHECK(r2.model.state(c, j) == m.state(c, j));
      }
    }
    // Idempotence.
    CHECK(prune(r2.model, 0.0).model == r2.model);
    // Report sizes are consistent.
    for (std::size_t c = 0; c < m.num_clauses(); ++c) {
      CHECK(r2.report.literals_after[c] <= r2.report.literals_before[c]);
    }
  }
}

TEST_CASE("prune_sweep: independent prunes of the same base") {
  std::mt19937_64 rng(5);
  const Model m = oracle::random_model(rng, ModelConfig{}, 40, 0.05);
  const std::vector<double> fractions{0.05, 0.40};
  const auto sweep = prune_sweep(m, fractions);
  REQUIRE(sweep.size() == 2);
  CHECK(sweep[0].second == prune(m, 0.05).model);
  CHECK(sweep[1].second == prune(m, 0.40).model);
  const auto p5 = prune(m, 0.05).report.pruned;
  const auto p40 = prune(m, 0.40).report.pruned;
  const std::set<std::size_t> s5(p5.begin(), p5.end());
  const std::set<std::size_t> s40(p40.begin(), p40.end());
  CHECK(std::includes(s40.begin(), s40.end(), s5.begin(), s5.end()));
  const std::vector<double> zero{0.0};
  CHECK(prune_sweep(m, zero)[0].second == m);
  const std::vector<double> bad{0.1, 0.7};
  CHECK_THROWS_AS(prune_sweep(m, bad), std::invalid_argument);
}

TEST_CASE("report JSON names literals and computes percent reduction") {
  Model m(cfg4(), 2, 0);
  m.set_state(0, 0, 200);
  m.set_state(0, 3, 200);
  m.set_state(1, 3, 200);
  const Vocabulary vocab({"terrible", "good"});
  const auto result = prune(m, 0.5);
  CHECK(result.report.pruned == std::vector<std::size_t>{0});
  const auto reduction = result.report.percent_reduction();
  CHECK(reduction[0] == doctest::Approx(50.0));
  CHECK(reduction[2] == 0.0);
  const auto j = prune_report_to_json(result.report, &vocab);
  CHECK(j["pruned_literals"][0] == "terrible");
  CHECK(literal_name(3, vocab) == "¬good");
  CHECK(j["clauses"].size() == 4);
}

TEST_CASE("sweep over a trained planted-keyword model: total includes never grow") {
  const auto t = planted::train(42, 5);
  std::vector<double> fractions;
  for (int p = 0; p <= 40; p += 5) fractions.push_back(p / 100.0);
  std::uint64_t previous = UINT64_MAX;
  for (const auto& [f, model] : prune_sweep(t.model, fractions)) {
    const std::uint64_t total = literal_frequencies(model).total();
    CHECK(total <= previous);
    previous = total;
  }
  CHECK(previous < literal_frequencies(t.model).total());
}
