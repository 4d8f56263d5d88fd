#pragma once

#include <vector>

#include "euler2d/torus.hpp"

namespace euler2d {

/// Uniform periodic n-by-n grid on the unit torus [-1/2, 1/2)^2, row-major
/// with index iy * n + ix. Sample abscissa: coord(i) = (i + offset) * h - 1/2.
/// offset = 0.5 places samples at cell centers (physical fields); offset = 0
/// places them on the lattice (tabulated kernels, convolution stencils).
struct ScalarGrid {
    int n = 0;
    double offset = 0.5;
    std::vector<double> v;

    ScalarGrid() = default;
    ScalarGrid(int n_, double offset_ = 0.5) : n(n_), offset(offset_), v(static_cast<size_t>(n_) * n_, 0.0) {}

    double h() const { return 1.0 / n; }
    double coord(int i) const { return (i + offset) * h() - 0.5; }
    Vec2 point(int ix, int iy) const { return {coord(ix), coord(iy)}; }
    double& at(int ix, int iy) { return v[static_cast<size_t>(iy) * n + ix]; }
    double at(int ix, int iy) const { return v[static_cast<size_t>(iy) * n + ix]; }

    double mean() const;
    double sup_norm() const;
    /// Grid quadrature of |f|^p over the torus, to the 1/p power.
    double lp_norm(double p) const;
};

struct VectorGrid {
    int n = 0;
    double offset = 0.5;
    std::vector<double> vx, vy;

    VectorGrid() = default;
    VectorGrid(int n_, double offset_ = 0.5)
        : n(n_), offset(offset_),
          vx(static_cast<size_t>(n_) * n_, 0.0), vy(static_cast<size_t>(n_) * n_, 0.0) {}

    double h() const { return 1.0 / n; }
    double coord(int i) const { return (i + offset) * h() - 0.5; }
    Vec2 point(int ix, int iy) const { return {coord(ix), coord(iy)}; }
    Vec2 at(int ix, int iy) const {
        const size_t k = static_cast<size_t>(iy) * n + ix;
        return {vx[k], vy[k]};
    }
    void set(int ix, int iy, const Vec2& u) {
        const size_t k = static_cast<size_t>(iy) * n + ix;
        vx[k] = u.x;
        vy[k] = u.y;
    }
    double sup_norm() const;
    double lp_norm(double p) const;
};

/// Periodic bicubic (Catmull-Rom) interpolation.
double interp_bicubic(const ScalarGrid& g, const Vec2& p);
Vec2 interp_bicubic(const VectorGrid& g, const Vec2& p);

}  // namespace euler2d
