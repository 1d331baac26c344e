// AVX2 variants of the mod-p row kernels.  This translation unit is the only
// one compiled with -mavx2; callers reach it through the dispatch table in
// kernels.cpp after a runtime CPU check.
//
// Products are reduced with Shoup's trick: for a fixed multiplier c < p and
// its precomputed companion c' = floor(c * 2^32 / p), the quotient estimate
// q = hi32(c' * x) satisfies 0 <= c*x - q*p < 2p, so one conditional
// subtraction yields the canonical residue.  Everything stays in 32-bit
// lanes, which is what makes the 8-wide AVX2 form worthwhile.  Requires
// p < 2^31 so that 2p fits in 32 bits.

#include "monadcoh/kernels.hpp"

#if defined(MONADCOH_HAVE_AVX2)

#include <immintrin.h>

namespace monadcoh::kernels {

namespace {

inline std::uint32_t shoup_companion(std::uint32_t c, std::uint32_t p) {
  return std::uint32_t((std::uint64_t(c) << 32) / p);
}

// 8-lane unsigned high-half 32x32 multiply.
inline __m256i mulhi_epu32(__m256i a, __m256i b) {
  __m256i even = _mm256_mul_epu32(a, b);
  __m256i odd = _mm256_mul_epu32(_mm256_srli_epi64(a, 32),
                                 _mm256_srli_epi64(b, 32));
  even = _mm256_srli_epi64(even, 32);
  const __m256i himask = _mm256_set1_epi64x(std::int64_t(0xFFFFFFFF00000000ull));
  return _mm256_or_si256(even, _mm256_and_si256(odd, himask));
}

// Canonical (t mod p) for t < 2p, using the unsigned-min trick: exactly one
// of t, t-p is < p and the other wraps or stays >= p.
inline __m256i reduce_once(__m256i t, __m256i vp) {
  return _mm256_min_epu32(t, _mm256_sub_epi32(t, vp));
}

// (c * x) mod p for 8 lanes, c broadcast in vc with companion vcs.
inline __m256i mulmod8(__m256i x, __m256i vc, __m256i vcs, __m256i vp) {
  __m256i q = mulhi_epu32(x, vcs);
  __m256i t = _mm256_sub_epi32(_mm256_mullo_epi32(x, vc),
                               _mm256_mullo_epi32(q, vp));
  return reduce_once(t, vp);
}

}  // namespace

void addmul_mod_avx2(std::uint32_t* y, const std::uint32_t* x,
                     std::size_t len, std::uint32_t c, std::uint32_t p) {
  const std::uint32_t cs = shoup_companion(c, p);
  const __m256i vc = _mm256_set1_epi32(std::int32_t(c));
  const __m256i vcs = _mm256_set1_epi32(std::int32_t(cs));
  const __m256i vp = _mm256_set1_epi32(std::int32_t(p));
  std::size_t i = 0;
  for (; i + 8 <= len; i += 8) {
    __m256i vx = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(x + i));
    __m256i vy = _mm256_loadu_si256(reinterpret_cast<__m256i*>(y + i));
    __m256i prod = mulmod8(vx, vc, vcs, vp);
    __m256i sum = reduce_once(_mm256_add_epi32(vy, prod), vp);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(y + i), sum);
  }
  if (i < len) addmul_mod_scalar(y + i, x + i, len - i, c, p);
}

void scale_mod_avx2(std::uint32_t* y, std::size_t len, std::uint32_t c,
                    std::uint32_t p) {
  const std::uint32_t cs = shoup_companion(c, p);
  const __m256i vc = _mm256_set1_epi32(std::int32_t(c));
  const __m256i vcs = _mm256_set1_epi32(std::int32_t(cs));
  const __m256i vp = _mm256_set1_epi32(std::int32_t(p));
  std::size_t i = 0;
  for (; i + 8 <= len; i += 8) {
    __m256i vy = _mm256_loadu_si256(reinterpret_cast<__m256i*>(y + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(y + i),
                        mulmod8(vy, vc, vcs, vp));
  }
  if (i < len) scale_mod_scalar(y + i, len - i, c, p);
}

}  // namespace monadcoh::kernels

#endif  // MONADCOH_HAVE_AVX2
