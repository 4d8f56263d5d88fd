#pragma once

#include <functional>
#include <vector>

#include "euler2d/torus.hpp"

namespace euler2d {

/// Adaptive RK45 (Cash-Karp) integration of the scalar ODE y' = f(t, y) from
/// t0 to t1. Used as the authoritative route for the comparison ODEs and as
/// an oracle in tests.
double integrate_ode_scalar(const std::function<double(double, double)>& f, double t0, double y0,
                            double t1, double rel_tol = 1e-10, double abs_tol = 1e-12);

/// Controls for the singularity-adapted torus quadrature.
struct TorusQuadConfig {
    int base_cells = 48;     ///< base uniform subdivision per side
    double ratio = 0.35;     ///< refine while cell size > ratio * distance to a singularity
    int max_depth = 16;      ///< cap on recursive subdivision
    /// Coefficient c of the integrable 1/r envelope |f| <= c/|x - s| near each
    /// singular point, used for the innermost cells.
    double envelope_coeff = 0.0;
};

/// Integrates f over the unit torus with quadtree refinement toward the given
/// singular points; leaves use 2x2 Gauss-Legendre. Cells at max depth that
/// contain a singular point are charged by the 1/r envelope.
double integrate_torus_singular(const std::function<double(const Vec2&)>& f,
                                const std::vector<Vec2>& singular_points,
                                const TorusQuadConfig& cfg = {});

/// Composite trapezoid of sampled values on a uniform grid over [0, t].
double trapezoid(const std::vector<double>& values, double t);

}  // namespace euler2d
