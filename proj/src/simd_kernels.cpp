#include "pcband/simd_kernels.hpp"

namespace pcband {

void accumulate_channels_scalar(const double* phase_re, const double* phase_im,
                                std::size_t nmodes, const double* const* coeffs,
                                int nch, double* out_re, double* out_im) {
  for (int c = 0; c < nch; ++c) {
    const double* co = coeffs[c];
    double sr = 0.0, si = 0.0;
    for (std::size_t m = 0; m < nmodes; ++m) {
      sr += co[m] * phase_re[m];
      si += co[m] * phase_im[m];
    }
    out_re[c] = sr;
    out_im[c] = si;
  }
}

AccumFn accumulate_channels_dispatch() {
#if defined(__x86_64__) || defined(_M_X64)
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"))
    return accumulate_channels_avx2;
#endif
  return accumulate_channels_scalar;
}

const char* accumulate_kernel_name() {
#if defined(__x86_64__) || defined(_M_X64)
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"))
    return "avx2";
#endif
  return "scalar";
}

}  // namespace pcband
