#include <algorithm>
#include <atomic>
#include <stdexcept>
#include <utility>

#include "congruence/kernels.hpp"

namespace congruence::kernels {

namespace {

Isa detect() {
#if defined(__x86_64__) || defined(_M_X64)
  if (__builtin_cpu_supports("avx2")) return Isa::Avx2;
#endif
#if defined(__aarch64__)
  return Isa::Neon;
#endif
  return Isa::Scalar;
}

std::atomic<Isa>& selected() {
  static std::atomic<Isa> isa{detect()};
  return isa;
}

inline uint32_t inv_mod(uint32_t a, uint32_t p) {
  uint64_t result = 1, base = a, e = p - 2;
  while (e) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return static_cast<uint32_t>(result);
}

void axpy_raw(uint32_t* dst, const uint32_t* src, std::size_t n, uint32_t c, uint32_t p, const Divisor& d) {
  if (p < kSimdPrimeLimit) {
    switch (active_isa()) {
#if defined(__x86_64__) || defined(_M_X64)
      case Isa::Avx2: avx2::axpy_mod(dst, src, n, c, d); return;
#endif
#if defined(__aarch64__)
      case Isa::Neon: neon::axpy_mod(dst, src, n, c, d); return;
#endif
      default: break;
    }
  }
  scalar::axpy_mod(dst, src, n, c, p);
}

}  // namespace

std::string_view to_string(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
    case Isa::Neon: return "neon";
  }
  return "unknown";
}

bool isa_supported(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return true;
    case Isa::Avx2:
#if defined(__x86_64__) || defined(_M_X64)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Isa::Neon:
#if defined(__aarch64__)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Isa active_isa() { return selected().load(std::memory_order_relaxed); }

void force_isa(std::optional<Isa> isa) {
  if (isa && !isa_supported(*isa))
    throw std::invalid_argument("kernel variant not supported on this CPU: " + std::string(to_string(*isa)));
  selected().store(isa ? *isa : detect(), std::memory_order_relaxed);
}

void axpy_mod(std::span<uint32_t> dst, std::span<const uint32_t> src, uint32_t c, uint32_t p) {
  if (dst.size() != src.size()) throw std::invalid_argument("axpy_mod: length mismatch");
  axpy_raw(dst.data(), src.data(), dst.size(), c, p, Divisor(p));
}

std::size_t rank_mod_p(std::vector<uint32_t> a, std::size_t rows, std::size_t cols, uint32_t p) {
  const Divisor d(p);
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t piv = rank;
    while (piv < rows && a[piv * cols + col] == 0) ++piv;
    if (piv == rows) continue;
    if (piv != rank)
      std::swap_ranges(a.begin() + piv * cols, a.begin() + (piv + 1) * cols, a.begin() + rank * cols);
    uint32_t* prow = a.data() + rank * cols;
    const uint32_t inv = inv_mod(prow[col], p);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      uint32_t* row = a.data() + r * cols;
      if (row[col] == 0) continue;
      const uint32_t factor = static_cast<uint32_t>(static_cast<uint64_t>(row[col]) * inv % p);
      axpy_raw(row + col, prow + col, cols - col, p - factor, p, d);
    }
    ++rank;
  }
  return rank;
}

std::vector<uint32_t> matmul_mod_p(std::span<const uint32_t> a, std::span<const uint32_t> b, std::size_t n,
                                   std::size_t k, std::size_t m, uint32_t p) {
  if (a.size() != n * k || b.size() != k * m) throw std::invalid_argument("matmul_mod_p: shape mismatch");
  const Divisor d(p);
  std::vector<uint32_t> c(n * m, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      const uint32_t x = a[i * k + j];
      if (x != 0) axpy_raw(c.data() + i * m, b.data() + j * m, m, x, p, d);
    }
  return c;
}

}  // namespace congruence::kernels
