#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tmprune/pruning.hpp"
#include "tmprune/text.hpp"
#include "tmprune/tsetlin.hpp"

namespace tmprune {

// Runs the command-line tool. `args` excludes the program name. Returns the
// process exit code: 0 ok, 2 configuration, 3 data, 4 file format.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// "25" for 0.25, "12.5" for 0.125.
std::string percent_tag(double fraction);

// One clause as "w1 ∧ ¬w2 ∧ ...", literals ordered by in-model frequency
// (descending, ties by literal id). With `pruned`, literals the pruned model
// no longer includes are wrapped in brackets. An empty clause renders as
// "(empty)".
std::string render_clause(const Model& model, const Vocabulary& vocab, std::size_t clause,
                          const LiteralFrequencyTable& frequencies,
                          const Model* pruned = nullptr);

}  // namespace tmprune
