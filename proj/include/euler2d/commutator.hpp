#pragma once

#include <functional>
#include <vector>

#include "euler2d/grid.hpp"

namespace euler2d {

/// Mollification commutator [v . grad, rho_eps *] w = v . grad(rho_eps * w)
/// - rho_eps * div(v w), computed spectrally (the second term in divergence
/// form, valid for divergence-free v). Throws when the grid has fewer than
/// 4 cells across the mollifier support.
ScalarGrid commutator_apply(const VectorGrid& v, const ScalarGrid& w, double eps);

/// Direct quadrature of the kernel form
/// int (v(x) - v(x - z)) . grad rho_eps(z) w(x - z) dz at one point, for
/// analytically given fields (test oracle; uses the same discrete mollifier
/// mass normalization as the spectral route).
double commutator_kernel_quadrature(const std::function<Vec2(const Vec2&)>& v,
                                    const std::function<double(const Vec2&)>& w, double eps,
                                    const Vec2& x, int panel_points = 220,
                                    double mass_correction = 1.0);

struct CommutatorDecayRow {
    double eps = 0.0;
    double lp_norm = 0.0;
    double bound = 0.0;  ///< C_p ||Dv||_p ||w||_inf with the mollifier constant
};

/// L^p norms of the commutator over an eps sweep against the explicit
/// mollifier-constant bound.
std::vector<CommutatorDecayRow> commutator_lp_decay(const VectorGrid& v, const ScalarGrid& w,
                                                    const std::vector<double>& eps_list, double p);

/// ||D v||_p of a grid vector field (spectral gradients, pointwise Frobenius
/// norm).
double gradient_lp_norm(const VectorGrid& v, double p);

/// ||D u^w||_p for the velocity induced by a bounded grid vorticity.
double biot_savart_gradient_lp(const ScalarGrid& w, double p);

}  // namespace euler2d
