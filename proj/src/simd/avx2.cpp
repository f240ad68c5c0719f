// Compiled with -mavx2; only reached after a runtime CPU check.
#include <immintrin.h>

#include "tmprune/simd.hpp"

#include <cmath>

namespace tmprune::simd {
namespace {

bool clause_matches_avx2(const std::uint64_t* pos, const std::uint64_t* neg,
                         const std::uint64_t* x, std::size_t words) {
  std::size_t w = 0;
  __m256i violated = _mm256_setzero_si256();
  for (; w + 4 <= words; w += 4) {
    const __m256i vp = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(pos + w));
    const __m256i vn = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(neg + w));
    const __m256i vx = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(x + w));
    violated = _mm256_or_si256(violated, _mm256_or_si256(_mm256_andnot_si256(vx, vp),
                                                         _mm256_and_si256(vn, vx)));
  }
  if (!_mm256_testz_si256(violated, violated)) return false;
  std::uint64_t tail = 0;
  for (; w < words; ++w) tail |= (pos[w] & ~x[w]) | (neg[w] & x[w]);
  return tail == 0;
}

void count_includes_avx2(const std::uint8_t* states, std::size_t len,
                         std::uint8_t threshold, std::uint32_t* counts) {
  std::size_t j = 0;
  // states >= threshold  <=>  states > threshold - 1 (both fit in int32).
  const __m256i below = _mm256_set1_epi32(static_cast<int>(threshold) - 1);
  const __m256i one = _mm256_set1_epi32(1);
  for (; j + 8 <= len; j += 8) {
    const __m128i bytes = _mm_loadl_epi64(reinterpret_cast<const __m128i*>(states + j));
    const __m256i widened = _mm256_cvtepu8_epi32(bytes);
    const __m256i hit = _mm256_and_si256(_mm256_cmpgt_epi32(widened, below), one);
    __m256i* dst = reinterpret_cast<__m256i*>(counts + j);
    _mm256_storeu_si256(dst, _mm256_add_epi32(_mm256_loadu_si256(dst), hit));
  }
  for (; j < len; ++j) counts[j] += states[j] >= threshold ? 1u : 0u;
}

double abs_diff_sum_avx2(const double* a, const double* b, std::size_t len) {
  const __m256d sign = _mm256_set1_pd(-0.0);
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 8 <= len; k += 8) {
    const __m256d d0 = _mm256_sub_pd(_mm256_loadu_pd(a + k), _mm256_loadu_pd(b + k));
    const __m256d d1 = _mm256_sub_pd(_mm256_loadu_pd(a + k + 4), _mm256_loadu_pd(b + k + 4));
    acc0 = _mm256_add_pd(acc0, _mm256_andnot_pd(sign, d0));
    acc1 = _mm256_add_pd(acc1, _mm256_andnot_pd(sign, d1));
  }
  for (; k + 4 <= len; k += 4) {
    const __m256d d0 = _mm256_sub_pd(_mm256_loadu_pd(a + k), _mm256_loadu_pd(b + k));
    acc0 = _mm256_add_pd(acc0, _mm256_andnot_pd(sign, d0));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, _mm256_add_pd(acc0, acc1));
  double sum = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (; k < len; ++k) sum += std::fabs(a[k] - b[k]);
  return sum;
}

}  // namespace

const KernelTable& avx2_kernels() {
  static const KernelTable table{Level::kAvx2, "avx2", &clause_matches_avx2,
                                 &count_includes_avx2, &abs_diff_sum_avx2};
  return table;
}

}  // namespace tmprune::simd
