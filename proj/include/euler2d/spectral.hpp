#pragma once

#include <vector>

#include "euler2d/fft.hpp"
#include "euler2d/grid.hpp"

namespace euler2d {

/// Integer wavenumber for FFT row/column index i on an n-grid (standard order,
/// i <= n/2 maps to i, above to i - n).
inline int wavenumber(int i, int n) { return i <= n / 2 ? i : i - n; }

/// Forward DFT of a real grid (unnormalized); entry (iy, ix) holds mode
/// (kx, ky) = (wavenumber(ix), wavenumber(iy)). Continuum Fourier coefficient
/// of the sampled field is DFT / n^2.
std::vector<cplx> forward_dft(const ScalarGrid& f);

/// Real part of the inverse DFT (with 1/n^2), back onto a grid with the same
/// sample offset as `like`.
ScalarGrid inverse_dft(std::vector<cplx> spec, int n, double offset);

/// Spectral inversion u = -grad^perp (-Laplace)^-1 xi. The zero mode of xi is
/// annihilated; Nyquist rows/columns are zeroed to keep the field real and
/// divergence-free. Optional real multiplier (e.g. a mollifier symbol) indexed
/// like the spectrum is applied to every mode.
VectorGrid velocity_from_vorticity(const ScalarGrid& xi,
                                   const std::vector<double>* multiplier = nullptr);

/// d/dx_dim by spectral differentiation (Nyquist zeroed).
ScalarGrid spectral_derivative(const ScalarGrid& f, int dim);

/// Max over modes of |k . u_hat(k)| / n^2 (the spectral divergence content,
/// normalized like a continuum Fourier coefficient).
double spectral_divergence_max(const VectorGrid& u);

/// Periodic convolution with a kernel given by its real spectral multiplier
/// (the kernel's continuum Fourier coefficients).
ScalarGrid spectral_convolve(const ScalarGrid& f, const std::vector<double>& multiplier);

/// Gradient of f as a vector grid (spectral).
VectorGrid spectral_gradient(const ScalarGrid& f);

}  // namespace euler2d
