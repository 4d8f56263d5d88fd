#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "euler2d/grid.hpp"
#include "euler2d/kernel.hpp"
#include "euler2d/noise.hpp"
#include "euler2d/torus.hpp"

namespace euler2d {

/// Thrown when a trajectory leaves the representable range (exit code 3 at
/// the CLI).
struct BlowUpError : std::runtime_error {
    explicit BlowUpError(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown when the Picard iteration fails to contract (exit code 4 at the
/// CLI); carries the distance trace.
struct ConvergenceError : std::runtime_error {
    ConvergenceError(const std::string& what, std::vector<double> t)
        : std::runtime_error(what), trace(std::move(t)) {}
    std::vector<double> trace;
};

enum class Scheme { EulerMaruyama, StratonovichHeun };
enum class DriftMode { ParticleSum, GridSpectral };

struct SolverConfig {
    double dt = 1.0 / 64.0;
    double horizon = 0.25;
    int store_stride = 1;
    Scheme scheme = Scheme::EulerMaruyama;
    DriftMode drift_mode = DriftMode::GridSpectral;
    int field_n = 0;  ///< spectral grid for GridSpectral drift; 0 = marker grid
    double mollify_eps = 0.0;  ///< kernel width for the regularized flow equation
    int picard_max_iters = 40;
    double picard_tol = 1e-9;
    double picard_window = 0.0;  ///< 0 = whole horizon; adapted down when contraction is weak
    double contraction_threshold = 0.8;

    int steps() const;
    void validate(int marker_n) const;
};

/// Positions of the N x N marker grid across M realizations at stored times.
/// Markers are labelled by the cell centers of the torus partition; stored
/// positions are canonical representatives in [-1/2, 1/2)^2.
struct FlowState {
    int marker_n = 0;
    int realizations = 0;
    double dt = 0.0;
    int store_stride = 1;
    std::uint64_t seed = 0;  ///< driver seed (noise-path identity)
    std::vector<double> times;
    std::vector<Vec2> positions;  ///< [stored][realization][marker]
    std::string provenance;

    int marker_count() const { return marker_n * marker_n; }
    int stored_count() const { return static_cast<int>(times.size()); }
    size_t index(int s, int m, int j) const {
        return (static_cast<size_t>(s) * realizations + m) * marker_count() + j;
    }
    Vec2 pos(int s, int m, int j) const { return positions[index(s, m, j)]; }
    const Vec2* slice(int s, int m) const { return positions.data() + index(s, m, 0); }

    /// Marker labels (cell centers).
    static std::vector<Vec2> initial_markers(int n);
    static Vec2 marker_label(int n, int j);

    void save(const std::string& path) const;
    static FlowState load(const std::string& path);
    std::string to_bytes() const;
    static FlowState from_bytes(const std::string& bytes);
};

/// Drift field bound to one (time, realization): either a particle sum over
/// frozen marker positions or an interpolated spectral velocity grid.
class DriftEval {
public:
    DriftEval() = default;
    /// Particle-sum drift: sum_j w_j K(x - p_j), self-term excluded.
    DriftEval(const KernelEvaluator* kernel, const Vec2* pos, const double* weights, int count);
    /// Grid drift: bicubic interpolation of a precomputed velocity field.
    explicit DriftEval(VectorGrid u);

    Vec2 operator()(const Vec2& x) const;

private:
    const KernelEvaluator* kernel_ = nullptr;
    const Vec2* pos_ = nullptr;
    const double* weights_ = nullptr;
    int count_ = 0;
    VectorGrid grid_;
    bool grid_mode_ = false;
};

/// Builds drift evaluators for a fixed initial vorticity. Weights are
/// xi0(y_j) h^2; the grid route deposits (cloud-in-cell), inverts spectrally
/// (optionally through the mollifier symbol) and interpolates.
class DriftBuilder {
public:
    DriftBuilder(DriftMode mode, const KernelEvaluator* kernel, int marker_n,
                 const std::vector<double>& xi0_markers, int field_n = 0, double mollify_eps = 0.0);

    DriftEval bind(const Vec2* positions) const;
    DriftMode mode() const { return mode_; }

private:
    DriftMode mode_;
    const KernelEvaluator* kernel_;
    int marker_n_;
    int field_n_;
    std::vector<double> weights_;      // xi0 h^2 (particle route)
    std::vector<double> xi0_markers_;  // raw values (deposit route)
    std::vector<double> mollifier_multiplier_;
    bool use_multiplier_ = false;
};

/// drift(step, realization, positions) -> drift field for that step; the
/// positions pointer refers to the current state of that realization (the
/// self-consistent solver uses it; the frozen-iterate map ignores it).
using DriftProvider = std::function<DriftEval(int step, int realization, const Vec2* positions)>;

/// Called at every stored step with the positions of one realization.
using StepObserver = std::function<void(int step, int realization, const Vec2* positions, int count)>;

/// Time-steps dX = u dt + sum_k sigma_k dW^k for every marker and
/// realization (Ito and Stratonovich coincide for the shipped bases).
FlowState solve_linear_flow(int marker_n, int realizations, const DriftProvider& drift,
                            const NoiseBasis& basis, const BrownianDriver& driver,
                            const SolverConfig& cfg, const std::vector<Vec2>* initial = nullptr,
                            int first_step = 0, const StepObserver* observer = nullptr);

/// Drift induced by a frozen flow at one stored time (Eq. form
/// u(x) = sum_j K(x - psi_t(y_j)) xi0(y_j) h^2, or its grid-deposit variant).
Vec2 drift_from_flow(const FlowState& psi, const std::vector<double>& xi0_markers, int t_index,
                     int realization, const Vec2& x, const KernelEvaluator& kernel,
                     DriftMode mode = DriftMode::ParticleSum, int field_n = 0);

/// One Picard step: solves the linear SDE with the drift induced by the
/// frozen iterate psi, on psi's own window and noise path.
FlowState picard_map(const FlowState& psi, const std::vector<double>& xi0_markers,
                     const KernelEvaluator& kernel, const NoiseBasis& basis,
                     const BrownianDriver& driver, const SolverConfig& cfg, int first_step = 0,
                     const std::vector<Vec2>* initial = nullptr);

/// sup over stored times of the marker-and-realization average torus
/// distance between two flows on identical grids.
double flow_distance(const FlowState& a, const FlowState& b);

struct PicardWindowReport {
    double t_begin = 0.0, t_end = 0.0;
    std::vector<double> rho;  ///< iterate distances
};

struct PicardReport {
    std::vector<PicardWindowReport> windows;
    bool converged = false;
    int total_iterations = 0;
};

/// Picard iteration on adaptively sized time windows, concatenated to cover
/// [0, horizon]; the converged flow solves the nonlocal SDE up to
/// picard_tol. Throws ConvergenceError when a window will not contract.
FlowState solve_euler_flow(int marker_n, int realizations, const std::vector<double>& xi0_markers,
                           const NoiseBasis& basis, const BrownianDriver& driver,
                           const SolverConfig& cfg, const KernelEvaluator& kernel,
                           PicardReport* report = nullptr);

/// Single time-marching pass with the drift rebuilt from the current marker
/// positions at every step (independent oracle for solve_euler_flow).
FlowState direct_self_consistent_solve(int marker_n, int realizations,
                                       const std::vector<double>& xi0_markers,
                                       const NoiseBasis& basis, const BrownianDriver& driver,
                                       const SolverConfig& cfg, const KernelEvaluator& kernel,
                                       const StepObserver* observer = nullptr);

struct MeasurePreservationResult {
    double max_relative_deviation = 0.0;
    double sampling_floor = 0.0;  ///< O(N'/N + M^(-1/2)) reference scale
    ScalarGrid histogram;
};

/// Deposits markers of every realization into a coarse occupancy histogram
/// and compares with the uniform density.
MeasurePreservationResult measure_preservation_check(const FlowState& flow, int t_index,
                                                     int coarse_n);

struct HolderRegression {
    double space_exponent = 0.0;
    double time_exponent = 0.0;
};

/// Log-log regressions of empirical p-th moments of increments against
/// marker separation (at the final time) and against time separation.
HolderRegression holder_regression(const FlowState& flow, double p);

}  // namespace euler2d
