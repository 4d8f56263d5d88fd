#pragma once

#include <vector>

#include "euler2d/grid.hpp"
#include "euler2d/torus.hpp"

namespace euler2d {

/// Radial bump mollifier rho_eps(x) = eps^-2 rho(x/eps) with unit profile
/// rho(y) = c exp(-1/(1 - |2y|^2)) supported on the disc |y| < 1/2; c makes
/// the profile integrate to one.
class Mollifier {
public:
    explicit Mollifier(double eps);

    double eps() const { return eps_; }

    /// Unit-profile value rho(y).
    double profile(const Vec2& y) const;
    /// Unit-profile gradient (analytic).
    Vec2 profile_grad(const Vec2& y) const;

    /// Scaled mollifier rho_eps at a torus displacement.
    double value(const Vec2& x) const;
    /// Gradient of rho_eps (analytic).
    Vec2 grad(const Vec2& x) const;

    /// Continuum normalization constant c of the unit profile.
    static double profile_normalization();

    /// Spectral multiplier rho_hat(k) on an n-grid, computed from lattice
    /// samples renormalized to unit discrete mass (so convolution preserves
    /// the mean exactly and acts as a convex average). Throws if the grid
    /// does not resolve eps (fewer than 2 cells across the support radius).
    std::vector<double> spectral_multiplier(int n) const;

    /// Continuum Fourier coefficient of the unit profile at radial frequency
    /// kappa: rho_hat(kappa) = 2 pi int r rho(r) J0(2 pi kappa r) dr.
    static double fourier_coefficient(double kappa);

    /// Multiplier built from the exact continuum coefficients
    /// rho_hat(eps |k|); smooth in eps at every resolution (used for the
    /// mollified-kernel family, where no sampling artifacts may enter the
    /// eps ordering).
    std::vector<double> spectral_multiplier_exact(int n) const;

    /// Ratio between the discrete-mass normalization used on an n-grid and
    /// the continuum constant; the kernel-quadrature oracle applies it so
    /// both convolution routes share one normalization.
    double discrete_mass_correction(int n) const;

    /// Constant (int |y|^p |grad rho(y)|^p dy)^(1/p) of the commutator bound,
    /// computed from the unit profile by polar quadrature.
    static double commutator_constant(double p);

    /// Moment int y_i d_j rho(y) dy; equals -delta_ij for a unit-mass even
    /// profile (integration by parts).
    static double gradient_moment(int i, int j);

private:
    double eps_;
    std::vector<double> lattice_samples(int n, double* mass_out) const;
};

}  // namespace euler2d
