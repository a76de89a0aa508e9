#include <atomic>
#include <cstdlib>
#include <string>

#include "rmt/error.hpp"
#include "rmt/simd/kernels.hpp"

namespace rmt::simd {
namespace {

Level detect() {
  if (const char* env = std::getenv("RMT_SIMD")) {
    const std::string_view v(env);
    if (v == "scalar") return Level::Scalar;
    if (v == "avx2" && avx2_supported()) return Level::Avx2;
  }
  return avx2_supported() ? Level::Avx2 : Level::Scalar;
}

std::atomic<const KernelTable*>& current() {
  static std::atomic<const KernelTable*> ptr{&table(detect())};
  return ptr;
}

}  // namespace

std::string_view to_string(Level level) {
  return level == Level::Avx2 ? "avx2" : "scalar";
}

bool avx2_supported() {
#if defined(RMT_HAVE_AVX2_KERNELS) && (defined(__GNUC__) || defined(__clang__))
  static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return ok;
#else
  return false;
#endif
}

const KernelTable& table(Level level) {
  if (level == Level::Scalar) return detail::scalar_table;
#ifdef RMT_HAVE_AVX2_KERNELS
  if (avx2_supported()) return detail::avx2_table;
#endif
  throw Error(ErrorKind::InvalidParameter, "AVX2 kernels are not available on this machine");
}

const KernelTable& active() { return *current().load(std::memory_order_acquire); }

Level active_level() { return active().level; }

void set_level(Level level) { current().store(&table(level), std::memory_order_release); }

}  // namespace rmt::simd
