#pragma once

#include <vector>

namespace euler2d {

/// Log-Lipschitz modulus: gamma(r) = r (1 - log r) for 0 < r < 1, r for
/// r >= 1, continuously extended by gamma(0) = 0.
double gamma_modulus(double r);

struct LinearBoundCheck {
    bool holds;
    double slack;  ///< L_eps * r + eps - gamma(r)
};

/// Checks gamma(r) <= L_eps r + eps with L_eps = -log(eps). Valid for
/// eps in (0, 1/e]; the right endpoint is the tangent line at r = 1/e.
LinearBoundCheck gamma_linear_bound_check(double r, double eps);

/// Solution of z(t) = z0 + int_0^t C gamma(z_s) ds, evaluated in closed form:
/// below the crossing time t0 (where z reaches 1) the log branch gives
/// z = z0^exp(-Ct) e^(1 - exp(-Ct)); afterwards growth is exponential at
/// rate C. Agrees with direct numerical integration of the ODE.
double comparison_z(double t, double z0, double C);

/// Crossing time at which comparison_z reaches 1 (infinity when z0 = 0 or
/// C = 0; zero when z0 >= 1).
double comparison_z_crossing_time(double z0, double C);

/// Solution of v(t) = v0 + C int_0^t (gamma(v_s) + v_s) ds. The authoritative
/// route is adaptive ODE integration.
double comparison_v(double t, double v0, double C);

/// Closed form of the same solution (log branch v0^exp(-Ct) e^(2(1-exp(-Ct))),
/// then exponential growth at rate 2C), kept as a cross-check of the
/// integrator.
double comparison_v_closed_form(double t, double v0, double C);

/// Parameters of the iteration inequality rho^n_t <= A L_eps int rho^(n-1)
/// + eps B t and of its closed-form bound.
struct IterationBoundParams {
    double A = 1.0;         ///< rate constant (1/time)
    double B = 0.0;         ///< forcing constant (value/time)
    double T = 1.0;         ///< horizon
    double rho0_sup = 0.0;  ///< sup of the zeroth sequence element
    int n = 1;              ///< iteration index, >= 1
};

/// Closed-form iteration bound (A t)^n / sqrt(2 pi n) rho0_sup
/// + B t (e^(A t - 1))^n.
///
/// Note: by Stirling, n! >= sqrt(2 pi n) (n/e)^n, so the quantity the
/// recursion actually produces, (A n t)^n / n!, is bounded by
/// (A e t)^n / sqrt(2 pi n) -- an extra factor e^n relative to this form.
/// picard_bound_envelope carries that factor and is the variant that
/// provably dominates the fixed-eps recursion; picard_bound keeps the bare
/// prefactor, which still vanishes as n grows whenever A T < 1.
double picard_bound(const IterationBoundParams& p, double t);

/// (A e t)^n / sqrt(2 pi n) rho0_sup + B t (e^(A t - 1))^n; dominates
/// recursion_oracle for every n >= 1.
double picard_bound_envelope(const IterationBoundParams& p, double t);

/// Iterates rho^k(t) = A n int_0^t rho^(k-1) ds + e^-n B t (composite
/// trapezoid, fixed eps = e^-n) starting from rho0 sampled on a uniform grid
/// over [0, T]; returns rho^n on the same grid. grid_points must be >= 16.
std::vector<double> recursion_oracle(const IterationBoundParams& p,
                                     const std::vector<double>& rho0_samples,
                                     int grid_points = 512);

}  // namespace euler2d
