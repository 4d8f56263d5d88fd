#pragma once

#include <complex>
#include <vector>

namespace euler2d {

using cplx = std::complex<double>;

/// In-place radix-2 FFT of length n (power of two). inverse=true applies the
/// conjugate transform including the 1/n normalization.
void fft_1d(cplx* data, int n, bool inverse);

/// In-place 2D FFT of an n-by-n row-major array.
void fft_2d(std::vector<cplx>& data, int n, bool inverse);

}  // namespace euler2d
