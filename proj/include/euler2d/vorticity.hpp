#pragma once

#include <vector>

#include "euler2d/analysis.hpp"
#include "euler2d/flow.hpp"
#include "euler2d/testfn.hpp"

namespace euler2d {

enum class DepositScheme { NGP, CIC };

/// Grid-sampled vorticity per realization at one stored time.
struct VorticityField {
    int t_index = 0;
    std::vector<ScalarGrid> realization;  ///< deposited density per realization
    double sup_norm = 0.0;                ///< max over realizations

    const ScalarGrid& grid(int m) const { return realization.at(m); }
};

/// Deposits weighted markers onto an n-grid (weights divided by cell area).
ScalarGrid deposit_positions(const Vec2* pos, const double* weights, int count, int grid_n,
                             DepositScheme scheme);

/// Pushforward xi_t = (Phi_t)_# xi_0 by marker deposition, per realization.
VorticityField pushforward_vorticity(const FlowState& flow, const std::vector<double>& xi0_markers,
                                     int t_index, DepositScheme scheme, int grid_n = 0);

struct MaxPrincipleResult {
    double sup_ratio = 0.0;  ///< ||xi_t||_inf / ||xi_0||_inf (absolute sup when xi0 = 0)
    bool pass = false;
    bool ratio_defined = true;
};

/// Checks the pushforward sup against the initial sup; tolerance covers the
/// deposit smoothing overshoot.
MaxPrincipleResult max_principle_check(const VorticityField& field, double xi0_sup,
                                       double tolerance = 0.05);

/// Weak-form residual of the vorticity equation for one test function at one
/// stored time, per realization: both sides evaluated by marker sums on the
/// pushforward identity, the time integrals by the left-point rule, and the
/// stochastic integral with the replayed increments. The flow must store
/// every step and share the driver's seed.
std::vector<double> weak_form_residual(const FlowState& flow, const std::vector<double>& xi0_markers,
                                       const NoiseBasis& basis, const BrownianDriver& driver,
                                       const TestFunction& phi, int t_index,
                                       const KernelEvaluator& kernel, DriftMode mode,
                                       int field_n = 0);

struct StabilityRow {
    double eps = 0.0;
    double kernel_l1_dist = 0.0;       ///< ||K^eps - K||_L1
    double flow_dist = 0.0;            ///< sup_t flow_distance(Phi^eps, Phi)
    double bound = 0.0;                ///< v(T, C_hat ||K^eps - K||_L1)
};

/// Solves the regularized flow equation for every eps (common noise path),
/// compares with the exact-kernel flow and reports the comparison-function
/// bound built from the certified kernel constant.
std::vector<StabilityRow> stability_sweep(int marker_n, int realizations,
                                          const std::vector<double>& xi0_markers, double xi0_sup,
                                          const NoiseBasis& basis, const BrownianDriver& driver,
                                          const std::vector<double>& eps_list,
                                          const SolverConfig& cfg, const KernelEvaluator& kernel,
                                          double certified_constant,
                                          const TorusQuadConfig& quad = {});

/// E |<phi, xi^eps_t> - <phi, xi_t>| by marker sums, for every test function
/// and stored time index. Rows indexed [phi][time].
std::vector<std::vector<double>> weak_vorticity_convergence(
    const FlowState& flow, const FlowState& flow_eps, const std::vector<double>& xi0_markers,
    const std::vector<TestFunction>& phis, const std::vector<int>& t_indices);

/// Marker-sum pairing <xi_t, phi> = sum_j xi0(y_j) h^2 phi(Phi_t(y_j)).
double marker_pairing(const FlowState& flow, const std::vector<double>& xi0_markers, int t_index,
                      int realization, const TestFunction& phi);

}  // namespace euler2d
