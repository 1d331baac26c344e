#pragma once

// Mod-p vector kernels for the dense elimination inner loops.
//
// Every kernel has a portable scalar reference implementation and may have
// SIMD variants (currently AVX2).  The active variant is picked once at run
// time from CPU capabilities; tests can pin a variant with force_impl() and
// check that all variants produce identical canonical residues.
//
// Contract for all kernels: p is a prime with 2 <= p < 2^31 and every input
// value (including the multiplier c) is a canonical residue in [0, p).
// Outputs are canonical residues as well.

#include <cstddef>
#include <cstdint>

namespace monadcoh::kernels {

enum class Impl { Auto, Scalar, Avx2 };

// y[i] <- (y[i] + c * x[i]) mod p
void addmul_mod(std::uint32_t* y, const std::uint32_t* x, std::size_t len,
                std::uint32_t c, std::uint32_t p);

// y[i] <- (c * y[i]) mod p
void scale_mod(std::uint32_t* y, std::size_t len, std::uint32_t c,
               std::uint32_t p);

// Reference implementations (always available).
void addmul_mod_scalar(std::uint32_t* y, const std::uint32_t* x,
                       std::size_t len, std::uint32_t c, std::uint32_t p);
void scale_mod_scalar(std::uint32_t* y, std::size_t len, std::uint32_t c,
                      std::uint32_t p);

#if defined(MONADCOH_HAVE_AVX2)
// Defined in kernels_avx2.cpp; call only when avx2_supported().
void addmul_mod_avx2(std::uint32_t* y, const std::uint32_t* x,
                     std::size_t len, std::uint32_t c, std::uint32_t p);
void scale_mod_avx2(std::uint32_t* y, std::size_t len, std::uint32_t c,
                    std::uint32_t p);
#endif

bool avx2_supported();

// Pin the dispatched implementation (Impl::Auto re-probes the CPU).
// Forcing Avx2 on a CPU without it is ignored.
void force_impl(Impl impl);
const char* active_impl_name();

}  // namespace monadcoh::kernels
