#include "pcband/simd_kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

namespace pcband {

void accumulate_channels_avx2(const double* phase_re, const double* phase_im,
                              std::size_t nmodes, const double* const* coeffs,
                              int nch, double* out_re, double* out_im) {
  const std::size_t n4 = nmodes & ~std::size_t{3};
  for (int c = 0; c < nch; ++c) {
    const double* co = coeffs[c];
    __m256d ar0 = _mm256_setzero_pd(), ai0 = _mm256_setzero_pd();
    __m256d ar1 = _mm256_setzero_pd(), ai1 = _mm256_setzero_pd();
    std::size_t m = 0;
    for (; m + 8 <= n4; m += 8) {
      const __m256d c0 = _mm256_loadu_pd(co + m);
      const __m256d c1 = _mm256_loadu_pd(co + m + 4);
      ar0 = _mm256_fmadd_pd(c0, _mm256_loadu_pd(phase_re + m), ar0);
      ai0 = _mm256_fmadd_pd(c0, _mm256_loadu_pd(phase_im + m), ai0);
      ar1 = _mm256_fmadd_pd(c1, _mm256_loadu_pd(phase_re + m + 4), ar1);
      ai1 = _mm256_fmadd_pd(c1, _mm256_loadu_pd(phase_im + m + 4), ai1);
    }
    for (; m < n4; m += 4) {
      const __m256d c0 = _mm256_loadu_pd(co + m);
      ar0 = _mm256_fmadd_pd(c0, _mm256_loadu_pd(phase_re + m), ar0);
      ai0 = _mm256_fmadd_pd(c0, _mm256_loadu_pd(phase_im + m), ai0);
    }
    ar0 = _mm256_add_pd(ar0, ar1);
    ai0 = _mm256_add_pd(ai0, ai1);
    alignas(32) double tr[4], ti[4];
    _mm256_store_pd(tr, ar0);
    _mm256_store_pd(ti, ai0);
    double sr = tr[0] + tr[1] + tr[2] + tr[3];
    double si = ti[0] + ti[1] + ti[2] + ti[3];
    for (; m < nmodes; ++m) {
      sr += co[m] * phase_re[m];
      si += co[m] * phase_im[m];
    }
    out_re[c] = sr;
    out_im[c] = si;
  }
}

}  // namespace pcband

#endif
