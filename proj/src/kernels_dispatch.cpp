#include <cstdlib>
#include <cstring>

#include "manet/kernels.hpp"

namespace manet::kernels {

bool cpu_has_avx2() {
#if defined(__GNUC__) && (defined(__x86_64__) || defined(__i386__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

static const KernelTable* resolve(const char* name) {
  if (name == nullptr || std::strcmp(name, "auto") == 0) {
    const KernelTable* simd = avx2_table();
    if (simd != nullptr && cpu_has_avx2()) return simd;
    return &scalar_table();
  }
  if (std::strcmp(name, "scalar") == 0) return &scalar_table();
  if (std::strcmp(name, "avx2") == 0) {
    const KernelTable* simd = avx2_table();
    if (simd != nullptr && cpu_has_avx2()) return simd;
    return nullptr;
  }
  return nullptr;
}

static const KernelTable*& active_slot() {
  static const KernelTable* slot = resolve(std::getenv("MANET_KERNELS"));
  // An unusable MANET_KERNELS value falls back to scalar rather than
  // aborting; explicit select() reports failure instead.
  if (slot == nullptr) slot = &scalar_table();
  return slot;
}

const KernelTable& active() { return *active_slot(); }

bool select(const char* name) {
  const KernelTable* t = resolve(name);
  if (t == nullptr) return false;
  active_slot() = t;
  return true;
}

}  // namespace manet::kernels
