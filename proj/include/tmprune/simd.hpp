#pragma once

// Data-parallel inner loops shared by inference, pruning and evaluation.
//
// Every kernel has a portable scalar reference. Wider variants are compiled
// into separate translation units and picked once at runtime from CPU
// features; the scalar table is always available so tests can compare the
// two bit for bit (integer kernels) or to rounding (floating-point kernels).

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace tmprune::simd {

enum class Level { kScalar, kAvx2 };

struct KernelTable {
  Level level;
  const char* name;

  // True iff no included original literal sees a 0 and no included negated
  // literal sees a 1, i.e. ((pos & ~x) | (neg & x)) == 0 over all words.
  bool (*clause_matches)(const std::uint64_t* pos, const std::uint64_t* neg,
                         const std::uint64_t* x, std::size_t words);

  // counts[j] += (states[j] >= threshold) for j in [0, len).
  void (*count_includes)(const std::uint8_t* states, std::size_t len,
                         std::uint8_t threshold, std::uint32_t* counts);

  // Sum of |a[k] - b[k]|.
  double (*abs_diff_sum)(const double* a, const double* b, std::size_t len);
};

const KernelTable& scalar_kernels();

// nullptr when the level was not compiled in or the CPU lacks support.
const KernelTable* kernels_for(Level level);

// Best supported table. The TMPRUNE_SIMD environment variable ("scalar" or
// "avx2") pins the choice; an unsupported request falls back to scalar.
const KernelTable& active_kernels();

std::vector<Level> supported_levels();

std::string_view level_name(Level level);

// Convenience wrappers over active_kernels().
inline bool clause_matches(std::span<const std::uint64_t> pos,
                           std::span<const std::uint64_t> neg,
                           std::span<const std::uint64_t> x) {
  return active_kernels().clause_matches(pos.data(), neg.data(), x.data(), x.size());
}

inline void count_includes(std::span<const std::uint8_t> states, std::uint8_t threshold,
                           std::span<std::uint32_t> counts) {
  active_kernels().count_includes(states.data(), states.size(), threshold, counts.data());
}

inline double abs_diff_sum(std::span<const double> a, std::span<const double> b) {
  return active_kernels().abs_diff_sum(a.data(), b.data(), a.size());
}

}  // namespace tmprune::simd
