#pragma once

#include <cstdint>
#include <vector>

#include "euler2d/torus.hpp"

namespace euler2d {

/// Trigonometric polynomial test function with analytic gradient and
/// Laplacian (no numerical differentiation anywhere).
class TestFunction {
public:
    struct Term {
        int kx = 0, ky = 0;
        double a_cos = 0.0, b_sin = 0.0;
    };

    static TestFunction constant(double c);
    static TestFunction harmonic(int kx, int ky, double a_cos, double b_sin);
    /// Random polynomial of the given max degree (|k|_inf), coefficients
    /// scaled so the sup norm is roughly `scale`.
    static TestFunction random(std::uint64_t seed, int degree, double scale);

    double value(const Vec2& x) const;
    Vec2 gradient(const Vec2& x) const;
    double laplacian(const Vec2& x) const;

    bool depends_only_on_x1() const;
    int degree() const;

private:
    double c0_ = 0.0;
    std::vector<Term> terms_;
};

}  // namespace euler2d
