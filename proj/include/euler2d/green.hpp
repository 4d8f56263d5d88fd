#pragma once

#include "euler2d/grid.hpp"
#include "euler2d/torus.hpp"

namespace euler2d {

/// Parameters of the heat-integral splitting of the torus Green function.
/// The heat integral is cut at split_time: modes beyond it form a
/// super-exponentially convergent Fourier tail (cut at fourier_cutoff), the
/// near part becomes Gaussian image sums (cut at image_cutoff).
struct GreenSplitConfig {
    double split_time = 1.0;
    int fourier_cutoff = 2;
    int image_cutoff = 12;
    double tail_tolerance = 1e-12;

    void validate() const;
};

/// Conservative bound on the truncation error of green_split for the given
/// cutoffs (used to certify tail_tolerance).
double green_split_truncation_bound(const GreenSplitConfig& cfg);

/// Symmetric partial sum of the Fourier expansion
/// G(x) = -(1/4pi^2) sum_{k != 0} |k|^-2 e^{2 pi i k.x}, over 0 < |k|_inf <= kmax.
double green_fourier(const Vec2& x, int kmax);

/// Partial sum of the Fourier series of K = grad^perp G (the slow route,
/// used as an independent oracle for the Ewald-form gradient).
Vec2 biot_savart_fourier(const Vec2& x, int kmax);

/// Green function via the split (Ewald) evaluation; exact up to the certified
/// tail bound. Throws on x = 0 (logarithmic singularity).
double green_split(const Vec2& x, const GreenSplitConfig& cfg = {});

/// Biot-Savart kernel K = grad^perp G = (-d2 G, d1 G) via analytic gradients
/// of the split terms. Throws on x = 0.
Vec2 biot_savart_exact(const Vec2& x, const GreenSplitConfig& cfg = {});

}  // namespace euler2d
