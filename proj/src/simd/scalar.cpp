#include "tmprune/simd.hpp"

#include <cmath>

namespace tmprune::simd {
namespace {

bool clause_matches_scalar(const std::uint64_t* pos, const std::uint64_t* neg,
                           const std::uint64_t* x, std::size_t words) {
  std::uint64_t violated = 0;
  for (std::size_t w = 0; w < words; ++w) {
    violated |= (pos[w] & ~x[w]) | (neg[w] & x[w]);
  }
  return violated == 0;
}

void count_includes_scalar(const std::uint8_t* states, std::size_t len,
                           std::uint8_t threshold, std::uint32_t* counts) {
  for (std::size_t j = 0; j < len; ++j) {
    counts[j] += states[j] >= threshold ? 1u : 0u;
  }
}

double abs_diff_sum_scalar(const double* a, const double* b, std::size_t len) {
  double sum = 0.0;
  for (std::size_t k = 0; k < len; ++k) sum += std::fabs(a[k] - b[k]);
  return sum;
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{Level::kScalar, "scalar", &clause_matches_scalar,
                                 &count_includes_scalar, &abs_diff_sum_scalar};
  return table;
}

}  // namespace tmprune::simd
