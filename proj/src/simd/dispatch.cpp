#include <cstdlib>
#include <string>

#include "tmprune/simd.hpp"

namespace tmprune::simd {

#if defined(TMPRUNE_HAVE_AVX2)
const KernelTable& avx2_kernels();
#endif

namespace {

bool cpu_has_avx2() {
#if defined(TMPRUNE_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

const KernelTable& select_kernels() {
  const char* pinned = std::getenv("TMPRUNE_SIMD");
  if (pinned != nullptr && std::string(pinned) == "scalar") return scalar_kernels();
  if (const KernelTable* avx2 = kernels_for(Level::kAvx2)) return *avx2;
  return scalar_kernels();
}

}  // namespace

const KernelTable* kernels_for(Level level) {
  switch (level) {
    case Level::kScalar:
      return &scalar_kernels();
    case Level::kAvx2:
#if defined(TMPRUNE_HAVE_AVX2)
      if (cpu_has_avx2()) return &avx2_kernels();
#endif
      return nullptr;
  }
  return nullptr;
}

const KernelTable& active_kernels() {
  static const KernelTable& table = select_kernels();
  return table;
}

std::vector<Level> supported_levels() {
  std::vector<Level> levels;
  for (Level level : {Level::kScalar, Level::kAvx2}) {
    if (kernels_for(level) != nullptr) levels.push_back(level);
  }
  return levels;
}

std::string_view level_name(Level level) {
  switch (level) {
    case Level::kScalar:
      return "scalar";
    case Level::kAvx2:
      return "avx2";
  }
  return "unknown";
}

}  // namespace tmprune::simd
