#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "euler2d/torus.hpp"

namespace euler2d {

/// Finite family of divergence-free noise fields sigma_k with
/// a(x) = sum_k sigma_k sigma_k^T equal to C I2 exactly.
///
/// ConstantPair: sigma_1 = sqrt(C) e1, sigma_2 = sqrt(C) e2 (rigid random
/// translation). TrigShells: for every wavevector k in the listed full
/// square-symmetric shells, the pair c cos(2 pi k.x) k_perp/|k| and
/// c sin(2 pi k.x) k_perp/|k|; each full shell contributes 2 c^2 I2 to a.
class NoiseBasis {
public:
    static NoiseBasis constant_pair(double C);
    /// Shells identified by |k|^2 values (e.g. {1} gives the four unit
    /// wavevectors). `amplitude` is the per-field coefficient c.
    static NoiseBasis trig_shells(const std::vector<int>& shell_k2, double amplitude);
    /// Unvalidated explicit wavevector list; used to demonstrate that
    /// incomplete shells break isotropy. Config validation never builds this.
    static NoiseBasis trig_modes_unchecked(const std::vector<std::pair<int, int>>& modes,
                                           double amplitude);

    int mode_count() const { return static_cast<int>(fields_.size()); }
    Vec2 eval(int k, const Vec2& x) const;
    /// Spatial Jacobian of sigma_k (analytic).
    Mat2 grad(int k, const Vec2& x) const;

    bool is_constant_pair() const { return constant_pair_; }
    /// Scalar C of a = C I2 (exact for conforming bases).
    double a_constant() const { return a_constant_; }
    /// sum_k sup|sigma_k|^2 + sum_k Lip(sigma_k)^2, in closed form.
    double l2_c01_norm() const;
    std::string description() const { return description_; }

    struct AIdentityCheck {
        double C_estimate;
        double max_deviation;  ///< entrywise max of |a(x) - C I2| over the grid
    };
    /// Evaluates a(x) on an n-by-n grid and fits the scalar C.
    AIdentityCheck check_a_identity(int n = 64) const;

    /// Grid sup of |sum_k (sigma_k . grad) sigma_k|; vanishing makes the Ito
    /// and Stratonovich forms coincide.
    double ito_correction_sup(int n = 64) const;

private:
    struct Field {
        bool trig = false;
        bool sine = false;       // cos branch when false
        int kx = 0, ky = 0;      // wavevector (trig)
        Vec2 direction{1.0, 0.0};  // k_perp/|k| (trig) or the unit axis (constant)
        double amp = 0.0;
    };
    std::vector<Field> fields_;
    bool constant_pair_ = false;
    double a_constant_ = 0.0;
    std::string description_;
};

/// Seeded cylindrical-Brownian-increment driver. Every increment is a pure
/// function of (seed, realization, mode, base step); increments over solver
/// steps are sums of base-lattice increments, so refining the solver step
/// while keeping the base lattice leaves the Brownian path unchanged.
class BrownianDriver {
public:
    BrownianDriver(std::uint64_t seed, int mode_count, double dt, int substeps = 1);

    std::uint64_t seed() const { return seed_; }
    int mode_count() const { return modes_; }
    double dt() const { return dt_; }
    int substeps() const { return substeps_; }

    /// Gaussian(0, dt) increment for the given solver step.
    double increment(int realization, int mode, int step) const;

    /// Brownian value W(t_step) (sum of increments up to the step).
    double path_value(int realization, int mode, int step) const;

private:
    std::uint64_t seed_;
    int modes_;
    double dt_;
    int substeps_;
};

}  // namespace euler2d
