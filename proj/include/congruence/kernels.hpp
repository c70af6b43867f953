#pragma once

// Base-field (F_p) inner loops. Every kernel has a scalar reference version;
// SIMD variants are selected at runtime and must agree with it bit for bit.
//
// All kernels take residues in [0, p). The SIMD paths need p < 2^16 so that
// dst + c*src fits in 32 bits; larger primes always take the scalar path.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace congruence::kernels {

enum class Isa { Scalar, Avx2, Neon };

std::string_view to_string(Isa isa);
bool isa_supported(Isa isa);
/// The variant used by the dispatching entry points.
Isa active_isa();
/// Pin the dispatch to a specific variant (tests, benchmarks). nullopt
/// restores automatic selection. Throws if the variant is unsupported here.
void force_isa(std::optional<Isa> isa);

inline constexpr uint32_t kSimdPrimeLimit = 1u << 16;

/// Precomputed constants for exact division by p of 32-bit values
/// (Granlund-Montgomery round-up method).
struct Divisor {
  uint32_t p;
  uint32_t magic;
  uint32_t shift;  // ceil(log2 p) - 1
  explicit Divisor(uint32_t p);
};

namespace scalar {
void axpy_mod(uint32_t* dst, const uint32_t* src, std::size_t n, uint32_t c, uint32_t p);
}
#if defined(__x86_64__) || defined(_M_X64)
namespace avx2 {
void axpy_mod(uint32_t* dst, const uint32_t* src, std::size_t n, uint32_t c, const Divisor& d);
}
#endif
#if defined(__aarch64__)
namespace neon {
void axpy_mod(uint32_t* dst, const uint32_t* src, std::size_t n, uint32_t c, const Divisor& d);
}
#endif

/// dst[j] = (dst[j] + c * src[j]) mod p.
void axpy_mod(std::span<uint32_t> dst, std::span<const uint32_t> src, uint32_t c, uint32_t p);

/// Rank of a row-major rows x cols matrix over F_p (input is consumed).
std::size_t rank_mod_p(std::vector<uint32_t> a, std::size_t rows, std::size_t cols, uint32_t p);

/// (n x k) * (k x m) over F_p, row-major.
std::vector<uint32_t> matmul_mod_p(std::span<const uint32_t> a, std::span<const uint32_t> b, std::size_t n,
                                   std::size_t k, std::size_t m, uint32_t p);

}  // namespace congruence::kernels
