#pragma once

#include <stdexcept>
#include <vector>

#include "euler2d/flow.hpp"
#include "euler2d/noise.hpp"

namespace euler2d {

struct InversionError : std::runtime_error {
    InversionError(const std::string& what, double residual_)
        : std::runtime_error(what), residual(residual_) {}
    double residual;
};

/// Noise-only Stratonovich flow d psi = sum_k sigma_k(psi) o dW^k integrated
/// (Heun) on a grid of nodes jointly with the variational equation for the
/// Jacobian D psi; off-grid access by bicubic interpolation of the periodic
/// displacement and Jacobian entries. Immutable after construction.
class NoiseFlow {
public:
    NoiseFlow(const NoiseBasis& basis, const BrownianDriver& driver, int grid_n, double dt,
              double horizon, int realizations);

    int steps() const { return steps_; }
    double dt() const { return dt_; }
    int realizations() const { return realizations_; }
    std::uint64_t seed() const { return seed_; }

    /// psi_t at an arbitrary point (t = step dt).
    Vec2 value(int step, int realization, const Vec2& x) const;
    /// D psi_t at an arbitrary point.
    Mat2 jacobian(int step, int realization, const Vec2& x) const;
    /// Newton inversion of psi_t(x) = y; residual < 1e-10 or throws.
    Vec2 inverse(int step, int realization, const Vec2& y) const;

    /// min over nodes and stored steps of det D psi (should be 1 up to the
    /// integrator tolerance).
    double min_det(int realization) const;
    double max_det(int realization) const;

private:
    int grid_n_, steps_, realizations_;
    double dt_;
    std::uint64_t seed_;
    // [step][realization]: displacement field and Jacobian entries
    std::vector<VectorGrid> disp_;
    std::vector<ScalarGrid> j11_, j12_, j21_, j22_;
    size_t idx(int step, int m) const { return static_cast<size_t>(step) * realizations_ + m; }
};

/// Transformed drift of the random ODE:
/// (D psi_t(x))^-1 sum_j K(psi_t(x) - psi_t(tilde_j)) xi0(y_j) h^2.
Vec2 transformed_drift(const NoiseFlow& nf, int step, int realization, const Vec2& x,
                       const Vec2* tilde_positions, const std::vector<double>& xi0_markers,
                       int marker_n, const KernelEvaluator& kernel);

/// Integrates the pathwise random ODE d tilde = u~(tilde) dt with Heun (RK2);
/// no stochastic increments enter this solve.
FlowState random_ode_solve(const NoiseFlow& nf, const std::vector<double>& xi0_markers,
                           int marker_n, const KernelEvaluator& kernel, int store_stride = 1);

/// flow_distance between psi_t(tilde_t(x)) and the directly solved flow.
double equivalence_check(const NoiseFlow& nf, const FlowState& tilde, const FlowState& direct);

}  // namespace euler2d
