#pragma once

#include <cstddef>

namespace pcband {

// Accumulation kernel for reciprocal-space lattice sums:
//   out_re[c] = sum_m coeffs[c][m] * phase_re[m]
//   out_im[c] = sum_m coeffs[c][m] * phase_im[m]
// for nch coefficient channels sharing one phase array.
using AccumFn = void (*)(const double* phase_re, const double* phase_im,
                         std::size_t nmodes, const double* const* coeffs,
                         int nch, double* out_re, double* out_im);

void accumulate_channels_scalar(const double* phase_re, const double* phase_im,
                                std::size_t nmodes, const double* const* coeffs,
                                int nch, double* out_re, double* out_im);

#if defined(__x86_64__) || defined(_M_X64)
void accumulate_channels_avx2(const double* phase_re, const double* phase_im,
                              std::size_t nmodes, const double* const* coeffs,
                              int nch, double* out_re, double* out_im);
#endif

// Runtime-dispatched kernel (AVX2 when the CPU supports it, scalar otherwise).
AccumFn accumulate_channels_dispatch();

const char* accumulate_kernel_name();

}  // namespace pcband
