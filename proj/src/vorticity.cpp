#include "euler2d/vorticity.hpp"

#include <cmath>
#include <stdexcept>

namespace euler2d {

ScalarGrid deposit_positions(const Vec2* pos, const double* weights, int count, int grid_n,
                             DepositScheme scheme) {
    ScalarGrid dep(grid_n);
    const double inv_area = static_cast<double>(grid_n) * grid_n;
    for (int j = 0; j < count; ++j) {
        if (weights[j] == 0.0) continue;
        const double gx = (pos[j].x + 0.5) * grid_n - 0.5;
        const double gy = (pos[j].y + 0.5) * grid_n - 0.5;
        const double w = weights[j] * inv_area;
        if (scheme == DepositScheme::NGP) {
            int ix = static_cast<int>(std::lround(gx)) % grid_n;
            int iy = static_cast<int>(std::lround(gy)) % grid_n;
            if (ix < 0) ix += grid_n;
            if (iy < 0) iy += grid_n;
            dep.at(ix, iy) += w;
        } else {
            const double bx = std::floor(gx), by = std::floor(gy);
            const double fx = gx - bx, fy = gy - by;
            int ix = static_cast<int>(bx) % grid_n;
            int iy = static_cast<int>(by) % grid_n;
            if (ix < 0) ix += grid_n;
            if (iy < 0) iy += grid_n;
            const int ix1 = (ix + 1) % grid_n;
            const int iy1 = (iy + 1) % grid_n;
            dep.at(ix, iy) += w * (1.0 - fx) * (1.0 - fy);
            dep.at(ix1, iy) += w * fx * (1.0 - fy);
            dep.at(ix, iy1) += w * (1.0 - fx) * fy;
            dep.at(ix1, iy1) += w * fx * fy;
        }
    }
    return dep;
}

VorticityField pushforward_vorticity(const FlowState& flow, const std::vector<double>& xi0_markers,
                                     int t_index, DepositScheme scheme, int grid_n) {
    if (t_index < 0 || t_index >= flow.stored_count())
        throw std::out_of_range("pushforward_vorticity: time index");
    const int markers = flow.marker_count();
    if (static_cast<int>(xi0_markers.size()) != markers)
        throw std::invalid_argument("pushforward_vorticity: xi0 sample count mismatch");
    const int n = grid_n > 0 ? grid_n : flow.marker_n;
    const double h2 = 1.0 / (static_cast<double>(flow.marker_n) * flow.marker_n);
    std::vector<double> weights(markers);
    for (int j = 0; j < markers; ++j) weights[j] = xi0_markers[j] * h2;

    VorticityField out;
    out.t_index = t_index;
    out.realization.reserve(flow.realizations);
    for (int m = 0; m < flow.realizations; ++m) {
        out.realization.push_back(
            deposit_positions(flow.slice(t_index, m), weights.data(), markers, n, scheme));
        out.sup_norm = std::max(out.sup_norm, out.realization.back().sup_norm());
    }
    return out;
}

MaxPrincipleResult max_principle_check(const VorticityField& field, double xi0_sup,
                                       double tolerance) {
    MaxPrincipleResult res;
    if (xi0_sup == 0.0) {
        res.ratio_defined = false;
        res.sup_ratio = field.sup_norm;  // absolute sup when the ratio is undefined
        res.pass = field.sup_norm <= tolerance;
        return res;
    }
    res.sup_ratio = field.sup_norm / xi0_sup;
    res.pass = res.sup_ratio <= 1.0 + tolerance;
    return res;
}

double marker_pairing(const FlowState& flow, const std::vector<double>& xi0_markers, int t_index,
                      int realization, const TestFunction& phi) {
    const int markers = flow.marker_count();
    const double h2 = 1.0 / (static_cast<double>(flow.marker_n) * flow.marker_n);
    const Vec2* pos = flow.slice(t_index, realization);
    double acc = 0.0;
    for (int j = 0; j < markers; ++j) {
        if (xi0_markers[j] == 0.0) continue;
        acc += xi0_markers[j] * phi.value(pos[j]);
    }
    return acc * h2;
}

std::vector<double> weak_form_residual(const FlowState& flow, const std::vector<double>& xi0_markers,
                                       const NoiseBasis& basis, const BrownianDriver& driver,
                                       const TestFunction& phi, int t_index,
                                       const KernelEvaluator& kernel, DriftMode mode, int field_n) {
    if (flow.store_stride != 1)
        throw std::invalid_argument("weak_form_residual: flow must store every step");
    if (flow.seed != driver.seed())
        throw std::invalid_argument("weak_form_residual: flow and driver seeds differ");
    if (t_index < 0 || t_index >= flow.stored_count())
        throw std::out_of_range("weak_form_residual: time index");
    const int markers = flow.marker_count();
    const double h2 = 1.0 / (static_cast<double>(flow.marker_n) * flow.marker_n);
    const double dt = flow.dt;
    const double a_const = basis.a_constant();

    DriftBuilder builder(mode, &kernel, flow.marker_n, xi0_markers, field_n);

    std::vector<double> residuals(flow.realizations, 0.0);
    for (int m = 0; m < flow.realizations; ++m) {
        const double lhs = marker_pairing(flow, xi0_markers, t_index, m, phi) -
                           marker_pairing(flow, xi0_markers, 0, m, phi);
        double drift_term = 0.0, noise_term = 0.0, laplace_term = 0.0;
        for (int s = 0; s < t_index; ++s) {
            const Vec2* pos = flow.slice(s, m);
            const DriftEval u = builder.bind(pos);
            double pair_drift = 0.0, pair_lap = 0.0;
            std::vector<double> pair_noise(basis.mode_count(), 0.0);
            for (int j = 0; j < markers; ++j) {
                if (xi0_markers[j] == 0.0) continue;
                const Vec2 g = phi.gradient(pos[j]);
                pair_drift += xi0_markers[j] * u(pos[j]).dot(g);
                pair_lap += xi0_markers[j] * phi.laplacian(pos[j]);
                for (int k = 0; k < basis.mode_count(); ++k)
                    pair_noise[k] += xi0_markers[j] * basis.eval(k, pos[j]).dot(g);
            }
            drift_term += dt * h2 * pair_drift;
            laplace_term += 0.5 * a_const * dt * h2 * pair_lap;
            for (int k = 0; k < basis.mode_count(); ++k)
                noise_term += driver.increment(m, k, s) * h2 * pair_noise[k];
        }
        residuals[m] = std::fabs(lhs - drift_term - noise_term - laplace_term);
    }
    return residuals;
}

std::vector<StabilityRow> stability_sweep(int marker_n, int realizations,
                                          const std::vector<double>& xi0_markers, double xi0_sup,
                                          const NoiseBasis& basis, const BrownianDriver& driver,
                                          const std::vector<double>& eps_list,
                                          const SolverConfig& cfg, const KernelEvaluator& kernel,
                                          double certified_constant, const TorusQuadConfig& quad) {
    SolverConfig base = cfg;
    base.mollify_eps = 0.0;
    const FlowState exact =
        direct_self_consistent_solve(marker_n, realizations, xi0_markers, basis, driver, base, kernel);

    // comparison rate: kernel constant times the vorticity bound plus the
    // noise Lipschitz content (zero for the constant pair)
    const double sigma_lip_sq = basis.l2_c01_norm();  // upper bound on sum Lip^2
    const double rate = 2.0 * certified_constant * xi0_sup + sigma_lip_sq;

    std::vector<StabilityRow> rows;
    for (double eps : eps_list) {
        StabilityRow row;
        row.eps = eps;
        const KernelEvaluator mollified(kernel.split_config(), eps,
                                        std::max(256, cfg.field_n > 0 ? cfg.field_n : marker_n));
        row.kernel_l1_dist = kernel_l1_distance(kernel, mollified, quad);
        SolverConfig mcfg = cfg;
        mcfg.mollify_eps = eps;
        const FlowState approx = direct_self_consistent_solve(marker_n, realizations, xi0_markers,
                                                              basis, driver, mcfg, kernel);
        row.flow_dist = flow_distance(approx, exact);
        const double v0 = xi0_sup * cfg.horizon * row.kernel_l1_dist;
        row.bound = comparison_v(cfg.horizon, v0, rate > 0.0 ? rate : 1e-12);
        rows.push_back(row);
    }
    return rows;
}

std::vector<std::vector<double>> weak_vorticity_convergence(
    const FlowState& flow, const FlowState& flow_eps, const std::vector<double>& xi0_markers,
    const std::vector<TestFunction>& phis, const std::vector<int>& t_indices) {
    if (flow.seed != flow_eps.seed)
        throw std::invalid_argument("weak_vorticity_convergence: noise paths differ");
    if (flow.marker_n != flow_eps.marker_n || flow.realizations != flow_eps.realizations ||
        flow.stored_count() != flow_eps.stored_count())
        throw std::invalid_argument("weak_vorticity_convergence: shape mismatch");
    std::vector<std::vector<double>> table;
    for (const TestFunction& phi : phis) {
        std::vector<double> row;
        for (int t : t_indices) {
            double acc = 0.0;
            for (int m = 0; m < flow.realizations; ++m) {
                acc += std::fabs(marker_pairing(flow_eps, xi0_markers, t, m, phi) -
                                 marker_pairing(flow, xi0_markers, t, m, phi));
            }
            row.push_back(acc / flow.realizations);
        }
        table.push_back(std::move(row));
    }
    return table;
}

}  // namespace euler2d
