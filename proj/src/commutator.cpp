#include "euler2d/commutator.hpp"

#include <cmath>
#include <stdexcept>

#include "euler2d/mollifier.hpp"
#include "euler2d/spectral.hpp"

namespace euler2d {

ScalarGrid commutator_apply(const VectorGrid& v, const ScalarGrid& w, double eps) {
    const int n = w.n;
    if (v.n != n) throw std::invalid_argument("commutator_apply: grid mismatch");
    if (eps < 4.0 / n)
        throw std::invalid_argument("commutator_apply: grid does not resolve the mollifier (need >= 4 cells)");
    const Mollifier rho(eps);
    const std::vector<double> mult = rho.spectral_multiplier(n);

    // v . grad(rho * w)
    const ScalarGrid smooth = spectral_convolve(w, mult);
    const ScalarGrid sx = spectral_derivative(smooth, 0);
    const ScalarGrid sy = spectral_derivative(smooth, 1);

    // rho * div(v w)
    ScalarGrid vxw(n, w.offset), vyw(n, w.offset);
    for (size_t i = 0; i < w.v.size(); ++i) {
        vxw.v[i] = v.vx[i] * w.v[i];
        vyw.v[i] = v.vy[i] * w.v[i];
    }
    const ScalarGrid div_x = spectral_derivative(vxw, 0);
    const ScalarGrid div_y = spectral_derivative(vyw, 1);
    ScalarGrid div(n, w.offset);
    for (size_t i = 0; i < div.v.size(); ++i) div.v[i] = div_x.v[i] + div_y.v[i];
    const ScalarGrid smoothed_div = spectral_convolve(div, mult);

    ScalarGrid out(n, w.offset);
    for (size_t i = 0; i < out.v.size(); ++i)
        out.v[i] = v.vx[i] * sx.v[i] + v.vy[i] * sy.v[i] - smoothed_div.v[i];
    return out;
}

double commutator_kernel_quadrature(const std::function<Vec2(const Vec2&)>& v,
                                    const std::function<double(const Vec2&)>& w, double eps,
                                    const Vec2& x, int panel_points, double mass_correction) {
    const Mollifier rho(eps);
    // midpoint rule over the support square [-eps/2, eps/2]^2; the integrand
    // is smooth and compactly supported, so the rule converges beyond all
    // algebraic orders
    const int nq = panel_points;
    const double hq = eps / nq;
    double acc = 0.0;
    const Vec2 vx = v(x);
    for (int iy = 0; iy < nq; ++iy) {
        for (int ix = 0; ix < nq; ++ix) {
            const Vec2 z{-0.5 * eps + (ix + 0.5) * hq, -0.5 * eps + (iy + 0.5) * hq};
            const Vec2 g = rho.grad(z);
            if (g.x == 0.0 && g.y == 0.0) continue;
            const Vec2 xs = x - z;
            acc += (vx - v(xs)).dot(g) * w(xs);
        }
    }
    return acc * hq * hq * mass_correction;
}

double gradient_lp_norm(const VectorGrid& v, double p) {
    const int n = v.n;
    ScalarGrid cx(n, v.offset), cy(n, v.offset);
    cx.v = v.vx;
    cy.v = v.vy;
    const ScalarGrid d11 = spectral_derivative(cx, 0);
    const ScalarGrid d12 = spectral_derivative(cx, 1);
    const ScalarGrid d21 = spectral_derivative(cy, 0);
    const ScalarGrid d22 = spectral_derivative(cy, 1);
    double acc = 0.0;
    for (size_t i = 0; i < d11.v.size(); ++i) {
        const double frob = std::sqrt(d11.v[i] * d11.v[i] + d12.v[i] * d12.v[i] +
                                      d21.v[i] * d21.v[i] + d22.v[i] * d22.v[i]);
        acc += std::pow(frob, p);
    }
    return std::pow(acc / d11.v.size(), 1.0 / p);
}

double biot_savart_gradient_lp(const ScalarGrid& w, double p) {
    if (!(p >= 1.0) || !std::isfinite(p))
        throw std::domain_error("biot_savart_gradient_lp: p must be finite and >= 1");
    return gradient_lp_norm(velocity_from_vorticity(w), p);
}

std::vector<CommutatorDecayRow> commutator_lp_decay(const VectorGrid& v, const ScalarGrid& w,
                                                    const std::vector<double>& eps_list, double p) {
    const double dv_p = gradient_lp_norm(v, p);
    const double w_inf = w.sup_norm();
    const double c_p = Mollifier::commutator_constant(p);
    std::vector<CommutatorDecayRow> rows;
    for (double eps : eps_list) {
        CommutatorDecayRow row;
        row.eps = eps;
        row.lp_norm = commutator_apply(v, w, eps).lp_norm(p);
        row.bound = c_p * dv_p * w_inf;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace euler2d
