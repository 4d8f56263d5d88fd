#include "euler2d/grid.hpp"

#include <cmath>

namespace euler2d {

double ScalarGrid::mean() const {
    double s = 0.0;
    for (double a : v) s += a;
    return s / v.size();
}

double ScalarGrid::sup_norm() const {
    double s = 0.0;
    for (double a : v) s = std::max(s, std::fabs(a));
    return s;
}

double ScalarGrid::lp_norm(double p) const {
    double s = 0.0;
    for (double a : v) s += std::pow(std::fabs(a), p);
    return std::pow(s / v.size(), 1.0 / p);
}

double VectorGrid::sup_norm() const {
    double s = 0.0;
    for (size_t k = 0; k < vx.size(); ++k) s = std::max(s, std::hypot(vx[k], vy[k]));
    return s;
}

double VectorGrid::lp_norm(double p) const {
    double s = 0.0;
    for (size_t k = 0; k < vx.size(); ++k) s += std::pow(std::hypot(vx[k], vy[k]), p);
    return std::pow(s / vx.size(), 1.0 / p);
}

namespace {

inline double catmull_rom(double fm1, double f0, double f1, double f2, double t) {
    return f0 + 0.5 * t * (f1 - fm1 + t * (2.0 * fm1 - 5.0 * f0 + 4.0 * f1 - f2 +
                                           t * (3.0 * (f0 - f1) + f2 - fm1)));
}

struct Stencil {
    int idx[4];
    double tx;
};

inline Stencil stencil_1d(double x, int n, double offset) {
    // continuous grid coordinate: sample i sits at (i + offset)/n - 1/2
    double g = (x + 0.5) * n - offset;
    double base = std::floor(g);
    double t = g - base;
    int b = static_cast<int>(base);
    Stencil s;
    s.tx = t;
    for (int k = -1; k <= 2; ++k) {
        int i = (b + k) % n;
        if (i < 0) i += n;
        s.idx[k + 1] = i;
    }
    return s;
}

}  // namespace

double interp_bicubic(const ScalarGrid& g, const Vec2& p) {
    const Stencil sx = stencil_1d(p.x, g.n, g.offset);
    const Stencil sy = stencil_1d(p.y, g.n, g.offset);
    double col[4];
    for (int r = 0; r < 4; ++r) {
        const double* row = g.v.data() + static_cast<size_t>(sy.idx[r]) * g.n;
        col[r] = catmull_rom(row[sx.idx[0]], row[sx.idx[1]], row[sx.idx[2]], row[sx.idx[3]], sx.tx);
    }
    return catmull_rom(col[0], col[1], col[2], col[3], sy.tx);
}

Vec2 interp_bicubic(const VectorGrid& g, const Vec2& p) {
    const Stencil sx = stencil_1d(p.x, g.n, g.offset);
    const Stencil sy = stencil_1d(p.y, g.n, g.offset);
    double colx[4], coly[4];
    for (int r = 0; r < 4; ++r) {
        const size_t off = static_cast<size_t>(sy.idx[r]) * g.n;
        const double* rx = g.vx.data() + off;
        const double* ry = g.vy.data() + off;
        colx[r] = catmull_rom(rx[sx.idx[0]], rx[sx.idx[1]], rx[sx.idx[2]], rx[sx.idx[3]], sx.tx);
        coly[r] = catmull_rom(ry[sx.idx[0]], ry[sx.idx[1]], ry[sx.idx[2]], ry[sx.idx[3]], sx.tx);
    }
    return {catmull_rom(colx[0], colx[1], colx[2], colx[3], sy.tx),
            catmull_rom(coly[0], coly[1], coly[2], coly[3], sy.tx)};
}

}  // namespace euler2d
