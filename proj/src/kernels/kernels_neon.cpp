#include "congruence/kernels.hpp"

#if defined(__aarch64__)
#include <arm_neon.h>

namespace congruence::kernels::neon {

void axpy_mod(uint32_t* dst, const uint32_t* src, std::size_t n, uint32_t c, const Divisor& d) {
  const uint32x4_t vc = vdupq_n_u32(c);
  const uint32x4_t vp = vdupq_n_u32(d.p);
  const uint32x2_t vm2 = vdup_n_u32(d.magic);
  const uint32x4_t vm4 = vdupq_n_u32(d.magic);
  const int32x4_t vshift = vdupq_n_s32(-static_cast<int32_t>(d.shift));
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const uint32x4_t x = vmlaq_u32(vld1q_u32(dst + j), vld1q_u32(src + j), vc);
    const uint64x2_t lo = vmull_u32(vget_low_u32(x), vm2);
    const uint64x2_t hi = vmull_high_u32(x, vm4);
    const uint32x4_t t1 = vuzp2q_u32(vreinterpretq_u32_u64(lo), vreinterpretq_u32_u64(hi));
    const uint32x4_t q = vshlq_u32(vaddq_u32(t1, vshrq_n_u32(vsubq_u32(x, t1), 1)), vshift);
    vst1q_u32(dst + j, vmlsq_u32(x, q, vp));
  }
  if (j < n) scalar::axpy_mod(dst + j, src + j, n - j, c, d.p);
}

}  // namespace congruence::kernels::neon
#endif
