#include "euler2d/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace euler2d {

double integrate_ode_scalar(const std::function<double(double, double)>& f, double t0, double y0,
                            double t1, double rel_tol, double abs_tol) {
    if (t1 == t0) return y0;
    // Cash-Karp RK45 coefficients
    static const double a2 = 1.0 / 5, a3 = 3.0 / 10, a4 = 3.0 / 5, a5 = 1.0, a6 = 7.0 / 8;
    static const double b21 = 1.0 / 5;
    static const double b31 = 3.0 / 40, b32 = 9.0 / 40;
    static const double b41 = 3.0 / 10, b42 = -9.0 / 10, b43 = 6.0 / 5;
    static const double b51 = -11.0 / 54, b52 = 5.0 / 2, b53 = -70.0 / 27, b54 = 35.0 / 27;
    static const double b61 = 1631.0 / 55296, b62 = 175.0 / 512, b63 = 575.0 / 13824,
                        b64 = 44275.0 / 110592, b65 = 253.0 / 4096;
    static const double c1 = 37.0 / 378, c3 = 250.0 / 621, c4 = 125.0 / 594, c6 = 512.0 / 1771;
    static const double d1 = 2825.0 / 27648, d3 = 18575.0 / 48384, d4 = 13525.0 / 55296,
                        d5 = 277.0 / 14336, d6 = 1.0 / 4;

    double t = t0, y = y0;
    double h = (t1 - t0) / 64.0;
    const double dir = t1 > t0 ? 1.0 : -1.0;
    int guard = 0;
    while (dir * (t1 - t) > 0.0) {
        if (++guard > 2000000) throw std::runtime_error("integrate_ode_scalar: step budget exhausted");
        if (dir * (t + h - t1) > 0.0) h = t1 - t;
        const double k1 = f(t, y);
        const double k2 = f(t + a2 * h, y + h * b21 * k1);
        const double k3 = f(t + a3 * h, y + h * (b31 * k1 + b32 * k2));
        const double k4 = f(t + a4 * h, y + h * (b41 * k1 + b42 * k2 + b43 * k3));
        const double k5 = f(t + a5 * h, y + h * (b51 * k1 + b52 * k2 + b53 * k3 + b54 * k4));
        const double k6 = f(t + a6 * h, y + h * (b61 * k1 + b62 * k2 + b63 * k3 + b64 * k4 + b65 * k5));
        const double y5 = y + h * (c1 * k1 + c3 * k3 + c4 * k4 + c6 * k6);
        const double y4 = y + h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6);
        const double err = std::fabs(y5 - y4);
        const double scale = abs_tol + rel_tol * std::max(std::fabs(y), std::fabs(y5));
        if (err <= scale || std::fabs(h) < 1e-14 * std::fabs(t1 - t0)) {
            t += h;
            y = y5;
            const double grow = err > 0.0 ? 0.9 * std::pow(scale / err, 0.2) : 5.0;
            h *= std::min(5.0, std::max(0.2, grow));
        } else {
            h *= std::max(0.2, 0.9 * std::pow(scale / err, 0.25));
        }
    }
    return y;
}

namespace {

// 2-point Gauss-Legendre abscissae on [0,1]
constexpr double kGaussLo = 0.21132486540518711775;
constexpr double kGaussHi = 0.78867513459481288225;

struct Cell {
    double x, y, size;
    int depth;
};

double dist_to_singular(const Vec2& c, const std::vector<Vec2>& sing) {
    double d = 1e300;
    for (const Vec2& s : sing) d = std::min(d, torus_distance(c, s));
    return d;
}

bool contains_singular(const Cell& c, const std::vector<Vec2>& sing) {
    for (const Vec2& s : sing) {
        const Vec2 d = torus_diff({c.x + 0.5 * c.size, c.y + 0.5 * c.size}, s);
        if (std::fabs(d.x) <= 0.5 * c.size && std::fabs(d.y) <= 0.5 * c.size) return true;
    }
    return false;
}

}  // namespace

double integrate_torus_singular(const std::function<double(const Vec2&)>& f,
                                const std::vector<Vec2>& singular_points,
                                const TorusQuadConfig& cfg) {
    if (cfg.base_cells < 4) throw std::invalid_argument("integrate_torus_singular: base grid too coarse");
    std::vector<Cell> stack;
    const double h0 = 1.0 / cfg.base_cells;
    stack.reserve(static_cast<size_t>(cfg.base_cells) * cfg.base_cells);
    for (int iy = 0; iy < cfg.base_cells; ++iy)
        for (int ix = 0; ix < cfg.base_cells; ++ix)
            stack.push_back({-0.5 + ix * h0, -0.5 + iy * h0, h0, 0});

    double total = 0.0;
    while (!stack.empty()) {
        Cell c = stack.back();
        stack.pop_back();
        const Vec2 center{c.x + 0.5 * c.size, c.y + 0.5 * c.size};
        const double dist = dist_to_singular(center, singular_points);
        const bool needs_split = c.size > cfg.ratio * dist && c.depth < cfg.max_depth;
        if (needs_split) {
            const double s2 = 0.5 * c.size;
            stack.push_back({c.x, c.y, s2, c.depth + 1});
            stack.push_back({c.x + s2, c.y, s2, c.depth + 1});
            stack.push_back({c.x, c.y + s2, s2, c.depth + 1});
            stack.push_back({c.x + s2, c.y + s2, s2, c.depth + 1});
            continue;
        }
        if (c.depth >= cfg.max_depth && contains_singular(c, singular_points)) {
            // integral of 1/r over a square of side eta centered on the
            // singularity is 4 ln(1 + sqrt 2) * eta
            total += 3.5254943480781720 * c.size * cfg.envelope_coeff;
            continue;
        }
        const double w = 0.25 * c.size * c.size;
        total += w * (f({c.x + kGaussLo * c.size, c.y + kGaussLo * c.size}) +
                      f({c.x + kGaussHi * c.size, c.y + kGaussLo * c.size}) +
                      f({c.x + kGaussLo * c.size, c.y + kGaussHi * c.size}) +
                      f({c.x + kGaussHi * c.size, c.y + kGaussHi * c.size}));
    }
    return total;
}

double trapezoid(const std::vector<double>& values, double t) {
    const size_t m = values.size();
    if (m < 2) throw std::invalid_argument("trapezoid: need at least two samples");
    const double h = t / (m - 1);
    double s = 0.5 * (values.front() + values.back());
    for (size_t i = 1; i + 1 < m; ++i) s += values[i];
    return s * h;
}

}  // namespace euler2d
