// Compiled with -mavx2; only reached after a runtime CPU check.
#include "congruence/kernels.hpp"

#include <immintrin.h>

namespace congruence::kernels::avx2 {

namespace {

// High 32 bits of the unsigned 32x32 products, lane by lane.
inline __m256i mulhi_epu32(__m256i a, __m256i b) {
  const __m256i even = _mm256_srli_epi64(_mm256_mul_epu32(a, b), 32);
  const __m256i odd = _mm256_mul_epu32(_mm256_srli_epi64(a, 32), _mm256_srli_epi64(b, 32));
  return _mm256_blend_epi32(even, odd, 0xAA);
}

}  // namespace

void axpy_mod(uint32_t* dst, const uint32_t* src, std::size_t n, uint32_t c, const Divisor& d) {
  const __m256i vc = _mm256_set1_epi32(static_cast<int>(c));
  const __m256i vp = _mm256_set1_epi32(static_cast<int>(d.p));
  const __m256i vm = _mm256_set1_epi32(static_cast<int>(d.magic));
  const __m128i vs = _mm_cvtsi32_si128(static_cast<int>(d.shift));
  std::size_t j = 0;
  for (; j + 8 <= n; j += 8) {
    const __m256i s = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + j));
    const __m256i x0 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + j));
    const __m256i x = _mm256_add_epi32(x0, _mm256_mullo_epi32(s, vc));
    const __m256i t1 = mulhi_epu32(x, vm);
    const __m256i q = _mm256_srl_epi32(_mm256_add_epi32(t1, _mm256_srli_epi32(_mm256_sub_epi32(x, t1), 1)), vs);
    const __m256i r = _mm256_sub_epi32(x, _mm256_mullo_epi32(q, vp));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + j), r);
  }
  if (j < n) scalar::axpy_mod(dst + j, src + j, n - j, c, d.p);
}

}  // namespace congruence::kernels::avx2
