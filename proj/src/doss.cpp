#include "euler2d/doss.hpp"

#include <cmath>
#include <sstream>

namespace euler2d {

namespace {

/// exp(A) for traceless 2x2 A (closed form); det exp(A) = e^tr(A) = 1
/// exactly, so the propagated Jacobian keeps unit determinant to roundoff.
Mat2 exp_traceless(const Mat2& a) {
    const double d = a.det();  // A^2 = -det(A) I for traceless A
    double c0, c1;
    if (d > 1e-12) {
        const double s = std::sqrt(d);
        c0 = std::cos(s);
        c1 = std::sin(s) / s;
    } else if (d < -1e-12) {
        const double s = std::sqrt(-d);
        c0 = std::cosh(s);
        c1 = std::sinh(s) / s;
    } else {
        c0 = 1.0 - 0.5 * d;
        c1 = 1.0 - d / 6.0;
    }
    return {c0 + c1 * a.a11, c1 * a.a12, c1 * a.a21, c0 + c1 * a.a22};
}

}  // namespace

NoiseFlow::NoiseFlow(const NoiseBasis& basis, const BrownianDriver& driver, int grid_n, double dt,
                     double horizon, int realizations)
    : grid_n_(grid_n), realizations_(realizations), dt_(dt), seed_(driver.seed()) {
    if (grid_n < 8) throw std::invalid_argument("NoiseFlow: grid too coarse");
    if (!(dt > 0.0) || !(horizon > 0.0)) throw std::invalid_argument("NoiseFlow: bad time grid");
    steps_ = static_cast<int>(std::llround(horizon / dt));
    if (std::fabs(horizon / dt - steps_) > 1e-9)
        throw std::invalid_argument("NoiseFlow: horizon must be a multiple of dt");

    const int modes = basis.mode_count();
    const int nodes = grid_n * grid_n;
    disp_.assign(static_cast<size_t>(steps_ + 1) * realizations, VectorGrid(grid_n, 0.5));
    j11_.assign(disp_.size(), ScalarGrid(grid_n, 0.5));
    j12_.assign(disp_.size(), ScalarGrid(grid_n, 0.5));
    j21_.assign(disp_.size(), ScalarGrid(grid_n, 0.5));
    j22_.assign(disp_.size(), ScalarGrid(grid_n, 0.5));

    std::vector<Vec2> pos(nodes), pred(nodes);
    std::vector<Mat2> jac(nodes);
    std::vector<double> dw(modes);

    for (int m = 0; m < realizations_; ++m) {
        // nodes start at their own grid points with identity Jacobian
        for (int iy = 0; iy < grid_n; ++iy)
            for (int ix = 0; ix < grid_n; ++ix) {
                pos[static_cast<size_t>(iy) * grid_n + ix] = disp_[idx(0, m)].point(ix, iy);
                jac[static_cast<size_t>(iy) * grid_n + ix] = Mat2::identity();
            }
        auto store = [&](int step) {
            const size_t s = idx(step, m);
            for (int iy = 0; iy < grid_n; ++iy)
                for (int ix = 0; ix < grid_n; ++ix) {
                    const size_t q = static_cast<size_t>(iy) * grid_n + ix;
                    const Vec2 node = disp_[s].point(ix, iy);
                    // displacement is smooth and periodic; store unwrapped
                    // relative to the node, canonical in [-1/2, 1/2)
                    disp_[s].set(ix, iy, torus_diff(pos[q], node));
                    j11_[s].at(ix, iy) = jac[q].a11;
                    j12_[s].at(ix, iy) = jac[q].a12;
                    j21_[s].at(ix, iy) = jac[q].a21;
                    j22_[s].at(ix, iy) = jac[q].a22;
                }
        };
        store(0);
        for (int step = 0; step < steps_; ++step) {
            for (int k = 0; k < modes; ++k) dw[k] = driver.increment(m, k, step);
            // Heun predictor for the positions
            for (int q = 0; q < nodes; ++q) {
                Vec2 x = pos[q];
                for (int k = 0; k < modes; ++k) x += basis.eval(k, pos[q]) * dw[k];
                pred[q] = wrap(x);
            }
            // corrector; the Jacobian advances by the exponential of the
            // trapezoidal generator, which is traceless (divergence-free
            // sigma), so det D psi stays 1 exactly
            for (int q = 0; q < nodes; ++q) {
                Vec2 x = pos[q];
                Mat2 omega{0.0, 0.0, 0.0, 0.0};
                for (int k = 0; k < modes; ++k) {
                    x += (basis.eval(k, pos[q]) + basis.eval(k, pred[q])) * (0.5 * dw[k]);
                    omega = omega + (basis.grad(k, pos[q]) + basis.grad(k, pred[q])) * (0.5 * dw[k]);
                }
                pos[q] = wrap(x);
                jac[q] = exp_traceless(omega).mul(jac[q]);
                if (!std::isfinite(pos[q].x) || !std::isfinite(pos[q].y)) {
                    std::ostringstream what;
                    what << "noise flow blow-up at step " << step << " realization " << m;
                    throw BlowUpError(what.str());
                }
            }
            store(step + 1);
        }
    }
}

Vec2 NoiseFlow::value(int step, int realization, const Vec2& x) const {
    const size_t s = idx(step, realization);
    return wrap(x + interp_bicubic(disp_[s], x));
}

Mat2 NoiseFlow::jacobian(int step, int realization, const Vec2& x) const {
    const size_t s = idx(step, realization);
    return {interp_bicubic(j11_[s], x), interp_bicubic(j12_[s], x), interp_bicubic(j21_[s], x),
            interp_bicubic(j22_[s], x)};
}

Vec2 NoiseFlow::inverse(int step, int realization, const Vec2& y) const {
    // seed from the sample whose image lands nearest to y (scanned at twice
    // the node resolution so the seed starts inside the Newton basin)
    const int scan = 2 * grid_n_;
    Vec2 x{0.0, 0.0};
    double best = 1e300;
    for (int iy = 0; iy < scan; ++iy)
        for (int ix = 0; ix < scan; ++ix) {
            const Vec2 p{(ix + 0.5) / scan - 0.5, (iy + 0.5) / scan - 0.5};
            const double d = torus_distance(value(step, realization, p), y);
            if (d < best) {
                best = d;
                x = p;
            }
        }
    const double cap = 2.0 / grid_n_;  // stay within the seeding cell's basin
    const double fd = 1e-7;            // derivative of the interpolated map itself
    double residual = 1e300;
    for (int it = 0; it < 60; ++it) {
        const Vec2 r = torus_diff(value(step, realization, x), y);
        residual = r.norm();
        if (residual < 1e-12) return x;
        const Vec2 dx = torus_diff(value(step, realization, {x.x + fd, x.y}),
                                   value(step, realization, {x.x - fd, x.y})) * (0.5 / fd);
        const Vec2 dy = torus_diff(value(step, realization, {x.x, x.y + fd}),
                                   value(step, realization, {x.x, x.y - fd})) * (0.5 / fd);
        const Mat2 j{dx.x, dy.x, dx.y, dy.y};
        Vec2 step_v = j.inverse().apply(r);
        const double len = step_v.norm();
        if (len > cap) step_v = step_v * (cap / len);
        x = wrap(x - step_v);
    }
    if (residual < 1e-10) return x;
    std::ostringstream what;
    what << "NoiseFlow::inverse: Newton stalled at residual " << residual;
    throw InversionError(what.str(), residual);
}

double NoiseFlow::min_det(int realization) const {
    double lo = 1e300;
    for (int step = 0; step <= steps_; ++step) {
        const size_t s = idx(step, realization);
        for (size_t q = 0; q < j11_[s].v.size(); ++q) {
            lo = std::min(lo, j11_[s].v[q] * j22_[s].v[q] - j12_[s].v[q] * j21_[s].v[q]);
        }
    }
    return lo;
}

double NoiseFlow::max_det(int realization) const {
    double hi = -1e300;
    for (int step = 0; step <= steps_; ++step) {
        const size_t s = idx(step, realization);
        for (size_t q = 0; q < j11_[s].v.size(); ++q) {
            hi = std::max(hi, j11_[s].v[q] * j22_[s].v[q] - j12_[s].v[q] * j21_[s].v[q]);
        }
    }
    return hi;
}

Vec2 transformed_drift(const NoiseFlow& nf, int step, int realization, const Vec2& x,
                       const Vec2* tilde_positions, const std::vector<double>& xi0_markers,
                       int marker_n, const KernelEvaluator& kernel) {
    const int markers = marker_n * marker_n;
    const double h2 = 1.0 / (static_cast<double>(marker_n) * marker_n);
    const Vec2 px = nf.value(step, realization, x);
    Vec2 acc{0.0, 0.0};
    for (int j = 0; j < markers; ++j) {
        if (xi0_markers[j] == 0.0) continue;
        const Vec2 py = nf.value(step, realization, tilde_positions[j]);
        if (px.x == py.x && px.y == py.y) continue;  // self-term
        acc += kernel(torus_diff(px, py)) * (xi0_markers[j] * h2);
    }
    const Mat2 dpsi = nf.jacobian(step, realization, x);
    const double det = dpsi.det();
    if (!(std::fabs(det) > 1e-8))
        throw std::runtime_error("transformed_drift: noise-flow Jacobian is singular");
    return dpsi.inverse().apply(acc);
}

FlowState random_ode_solve(const NoiseFlow& nf, const std::vector<double>& xi0_markers,
                           int marker_n, const KernelEvaluator& kernel, int store_stride) {
    const int markers = marker_n * marker_n;
    if (static_cast<int>(xi0_markers.size()) != markers)
        throw std::invalid_argument("random_ode_solve: xi0 sample count mismatch");
    const int steps = nf.steps();
    if (store_stride < 1 || steps % store_stride != 0)
        throw std::invalid_argument("random_ode_solve: store_stride must divide the step count");

    FlowState out;
    out.marker_n = marker_n;
    out.realizations = nf.realizations();
    out.dt = nf.dt();
    out.store_stride = store_stride;
    out.seed = nf.seed();
    const int stored = steps / store_stride + 1;
    out.times.resize(stored);
    for (int s = 0; s < stored; ++s) out.times[s] = static_cast<double>(s) * store_stride * nf.dt();
    out.positions.resize(static_cast<size_t>(stored) * out.realizations * markers);

    for (int m = 0; m < out.realizations; ++m) {
        std::vector<Vec2> cur = FlowState::initial_markers(marker_n);
        std::vector<Vec2> v1(markers), pred(markers);
        for (int j = 0; j < markers; ++j) out.positions[out.index(0, m, j)] = cur[j];
        for (int step = 0; step < steps; ++step) {
            for (int j = 0; j < markers; ++j)
                v1[j] = transformed_drift(nf, step, m, cur[j], cur.data(), xi0_markers, marker_n,
                                          kernel);
            for (int j = 0; j < markers; ++j) pred[j] = wrap(cur[j] + v1[j] * nf.dt());
            for (int j = 0; j < markers; ++j) {
                const Vec2 v2 = transformed_drift(nf, step + 1, m, pred[j], pred.data(),
                                                  xi0_markers, marker_n, kernel);
                cur[j] = wrap(cur[j] + (v1[j] + v2) * (0.5 * nf.dt()));
                if (!std::isfinite(cur[j].x) || !std::isfinite(cur[j].y))
                    throw BlowUpError("random_ode_solve: marker blow-up");
            }
            if ((step + 1) % store_stride == 0) {
                const int s = (step + 1) / store_stride;
                for (int j = 0; j < markers; ++j) out.positions[out.index(s, m, j)] = cur[j];
            }
        }
    }
    return out;
}

double equivalence_check(const NoiseFlow& nf, const FlowState& tilde, const FlowState& direct) {
    if (tilde.seed != direct.seed || nf.seed() != direct.seed)
        throw std::invalid_argument("equivalence_check: noise paths differ");
    if (tilde.marker_n != direct.marker_n || tilde.realizations != direct.realizations ||
        tilde.stored_count() != direct.stored_count())
        throw std::invalid_argument("equivalence_check: shape mismatch");
    const int markers = tilde.marker_count();
    double sup = 0.0;
    for (int s = 0; s < tilde.stored_count(); ++s) {
        const int nf_step = s * tilde.store_stride;
        double acc = 0.0;
        for (int m = 0; m < tilde.realizations; ++m) {
            const Vec2* pt = tilde.slice(s, m);
            const Vec2* pd = direct.slice(s, m);
            for (int j = 0; j < markers; ++j)
                acc += torus_distance(nf.value(nf_step, m, pt[j]), pd[j]);
        }
        sup = std::max(sup, acc / (static_cast<double>(markers) * tilde.realizations));
    }
    return sup;
}

}  // namespace euler2d
