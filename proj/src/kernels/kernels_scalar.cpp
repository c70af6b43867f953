#include "congruence/kernels.hpp"

namespace congruence::kernels {

Divisor::Divisor(uint32_t prime) : p(prime) {
  uint32_t l = 0;
  while ((uint64_t{1} << l) < prime) ++l;
  magic = static_cast<uint32_t>(((uint64_t{1} << 32) * ((uint64_t{1} << l) - prime)) / prime + 1);
  shift = l - 1;
}

namespace scalar {

void axpy_mod(uint32_t* dst, const uint32_t* src, std::size_t n, uint32_t c, uint32_t p) {
  for (std::size_t j = 0; j < n; ++j)
    dst[j] = static_cast<uint32_t>((dst[j] + static_cast<uint64_t>(c) * src[j]) % p);
}

}  // namespace scalar
}  // namespace congruence::kernels
