#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "euler2d/green.hpp"
#include "euler2d/grid.hpp"
#include "euler2d/quadrature.hpp"

namespace euler2d {

struct KernelTableSpec {
    int n = 1024;        ///< table resolution per side
    int core_cells = 4;  ///< analytic near-field radius, in table cells
};

/// O(1) evaluator for the periodic Biot-Savart kernel. The exact kernel
/// (eps = 0) combines a tabulated far field (bicubic) with the analytic
/// split evaluation inside a small core around the singularity. A mollified
/// evaluator (eps > 0) holds K * rho_eps built spectrally on a resolved grid;
/// it is bounded and globally Lipschitz. Immutable after construction.
class KernelEvaluator {
public:
    /// Exact kernel with a fresh table.
    KernelEvaluator(const GreenSplitConfig& cfg, const KernelTableSpec& table);
    /// Mollified kernel K * rho_eps on a grid_n lattice (spectral build).
    KernelEvaluator(const GreenSplitConfig& cfg, double eps, int grid_n);

    Vec2 operator()(const Vec2& x) const;

    double eps() const { return eps_; }
    bool mollified() const { return eps_ > 0.0; }
    const GreenSplitConfig& split_config() const { return cfg_; }
    int table_resolution() const { return table_.n; }
    int core_cells() const { return core_cells_; }
    double core_radius() const { return core_cells_ > 0 ? static_cast<double>(core_cells_) / table_.n : 0.0; }

    /// Grid sup of |K^eps| (mollified evaluators only).
    double sup_norm() const;

    void save(const std::string& path) const;
    static KernelEvaluator load(const std::string& path);
    std::string to_bytes() const;
    static KernelEvaluator from_bytes(const std::string& bytes);

private:
    KernelEvaluator() = default;
    GreenSplitConfig cfg_;
    double eps_ = 0.0;
    int core_cells_ = 0;
    VectorGrid table_;  // lattice samples (offset 0)
};

/// L1 norm of the kernel over the torus (quadtree with singular refinement).
double kernel_l1_norm(const KernelEvaluator& k, const TorusQuadConfig& quad = {});

/// Quadrature estimate of the L1 distance between the mollified and exact
/// kernels for the given width.
double kernel_l1_distance(const KernelEvaluator& exact, const KernelEvaluator& mollified,
                          const TorusQuadConfig& quad = {});

/// int |K(x - y) - K(x' - y)| dy over the torus; depends only on the
/// displacement d = x - x' by translation invariance.
double kernel_difference_l1(const KernelEvaluator& k, const Vec2& x, const Vec2& xprime,
                            const TorusQuadConfig& quad = {});

/// kernel_difference_l1 divided by gamma(torus_distance(x, x')); the
/// empirical constant of the log-Lipschitz estimate. Throws when x = x'.
double log_lipschitz_ratio(const KernelEvaluator& k, const Vec2& x, const Vec2& xprime,
                           const TorusQuadConfig& quad = {});

struct LogLipschitzSweep {
    double max_ratio = 0.0;
    double min_separation = 0.0, max_separation = 0.0;
    std::vector<double> ratios;
};

/// Ratio sweep over random pairs with separations log-spaced in
/// [min_sep, max_sep]; certifies the empirical kernel constant.
LogLipschitzSweep log_lipschitz_sweep(const KernelEvaluator& k, int pairs, std::uint64_t seed,
                                      double min_sep = 1e-4, double max_sep = 0.5,
                                      const TorusQuadConfig& quad = {});

/// Periodic convolution of a grid field with rho_eps (spectral). Preserves
/// the mean and does not increase the sup norm. Throws when the grid does
/// not resolve eps.
ScalarGrid mollify_field(const ScalarGrid& w, double eps);
VectorGrid mollify_field(const VectorGrid& w, double eps);

}  // namespace euler2d
