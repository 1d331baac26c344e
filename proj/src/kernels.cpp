#include "monadcoh/kernels.hpp"

#include <atomic>

namespace monadcoh::kernels {

void addmul_mod_scalar(std::uint32_t* y, const std::uint32_t* x,
                       std::size_t len, std::uint32_t c, std::uint32_t p) {
  for (std::size_t i = 0; i < len; ++i) {
    std::uint64_t t = std::uint64_t(y[i]) + std::uint64_t(c) * x[i];
    y[i] = std::uint32_t(t % p);
  }
}

void scale_mod_scalar(std::uint32_t* y, std::size_t len, std::uint32_t c,
                      std::uint32_t p) {
  for (std::size_t i = 0; i < len; ++i)
    y[i] = std::uint32_t(std::uint64_t(c) * y[i] % p);
}

bool avx2_supported() {
#if defined(__x86_64__) || defined(__i386__)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

namespace {

using AddmulFn = void (*)(std::uint32_t*, const std::uint32_t*, std::size_t,
                          std::uint32_t, std::uint32_t);
using ScaleFn = void (*)(std::uint32_t*, std::size_t, std::uint32_t,
                         std::uint32_t);

struct Table {
  AddmulFn addmul;
  ScaleFn scale;
  const char* name;
};

Table pick(Impl impl) {
#if defined(MONADCOH_HAVE_AVX2)
  bool want_avx2 = (impl == Impl::Avx2) ||
                   (impl == Impl::Auto && avx2_supported());
  if (want_avx2 && avx2_supported())
    return {&addmul_mod_avx2, &scale_mod_avx2, "avx2"};
#else
  (void)impl;
#endif
  return {&addmul_mod_scalar, &scale_mod_scalar, "scalar"};
}

std::atomic<const Table*> g_active{nullptr};

const Table& active() {
  const Table* t = g_active.load(std::memory_order_acquire);
  if (!t) {
    static Table boot = pick(Impl::Auto);
    g_active.store(&boot, std::memory_order_release);
    return boot;
  }
  return *t;
}

}  // namespace

void force_impl(Impl impl) {
  static Table forced;
  forced = pick(impl);
  g_active.store(&forced, std::memory_order_release);
}

const char* active_impl_name() { return active().name; }

void addmul_mod(std::uint32_t* y, const std::uint32_t* x, std::size_t len,
                std::uint32_t c, std::uint32_t p) {
  active().addmul(y, x, len, c, p);
}

void scale_mod(std::uint32_t* y, std::size_t len, std::uint32_t c,
               std::uint32_t p) {
  active().scale(y, len, c, p);
}

}  // namespace monadcoh::kernels
