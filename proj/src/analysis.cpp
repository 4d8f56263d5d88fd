#include "euler2d/analysis.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "euler2d/quadrature.hpp"

namespace euler2d {

double gamma_modulus(double r) {
    if (r < 0.0) throw std::domain_error("gamma_modulus: negative argument");
    if (r == 0.0) return 0.0;
    if (r < 1.0) return r * (1.0 - std::log(r));
    return r;
}

LinearBoundCheck gamma_linear_bound_check(double r, double eps) {
    const double inv_e = std::exp(-1.0);
    if (!(eps > 0.0) || eps > inv_e + 1e-15)
        throw std::domain_error("gamma_linear_bound_check: eps must lie in (0, 1/e]");
    if (r < 0.0) throw std::domain_error("gamma_linear_bound_check: negative r");
    const double l_eps = -std::log(eps);
    const double slack = l_eps * r + eps - gamma_modulus(r);
    return {slack >= -1e-12, slack};
}

double comparison_z_crossing_time(double z0, double C) {
    if (z0 < 0.0 || C < 0.0) throw std::domain_error("comparison_z_crossing_time: bad arguments");
    if (z0 >= 1.0) return 0.0;
    if (z0 == 0.0 || C == 0.0) return std::numeric_limits<double>::infinity();
    return std::log(1.0 - std::log(z0)) / C;
}

double comparison_z(double t, double z0, double C) {
    if (t < 0.0 || z0 < 0.0 || C < 0.0) throw std::domain_error("comparison_z: bad arguments");
    if (z0 == 0.0 || C == 0.0) return z0;
    if (z0 >= 1.0) return z0 * std::exp(C * t);
    const double t0 = comparison_z_crossing_time(z0, C);
    if (t >= t0) return std::exp(C * (t - t0));
    const double e = std::exp(-C * t);
    return std::pow(z0, e) * std::exp(1.0 - e);
}

double comparison_v(double t, double v0, double C) {
    if (t < 0.0 || v0 < 0.0 || C < 0.0) throw std::domain_error("comparison_v: bad arguments");
    if (v0 == 0.0 || C == 0.0 || t == 0.0) return v0;
    return integrate_ode_scalar(
        [C](double, double v) { return C * (gamma_modulus(std::max(v, 0.0)) + std::max(v, 0.0)); },
        0.0, v0, t, 1e-11, 1e-14);
}

double comparison_v_closed_form(double t, double v0, double C) {
    if (t < 0.0 || v0 < 0.0 || C < 0.0) throw std::domain_error("comparison_v_closed_form: bad arguments");
    if (v0 == 0.0 || C == 0.0) return v0;
    if (v0 >= 1.0) return v0 * std::exp(2.0 * C * t);
    const double t0 = std::log(0.5 * (2.0 - std::log(v0))) / C;
    if (t >= t0) return std::exp(2.0 * C * (t - t0));
    const double e = std::exp(-C * t);
    return std::pow(v0, e) * std::exp(2.0 * (1.0 - e));
}

double picard_bound(const IterationBoundParams& p, double t) {
    if (p.n < 1) throw std::domain_error("picard_bound: n must be >= 1");
    if (p.A <= 0.0 || p.B < 0.0 || p.T <= 0.0) throw std::domain_error("picard_bound: bad parameters");
    if (t < 0.0 || t > p.T) throw std::domain_error("picard_bound: t outside [0, T]");
    const double lead = std::pow(p.A * t, p.n) / std::sqrt(2.0 * M_PI * p.n);
    const double forcing = p.B * t * std::pow(std::exp(p.A * t - 1.0), p.n);
    return lead * p.rho0_sup + forcing;
}

double picard_bound_envelope(const IterationBoundParams& p, double t) {
    if (p.n < 1) throw std::domain_error("picard_bound_envelope: n must be >= 1");
    if (p.A <= 0.0 || p.B < 0.0 || p.T <= 0.0)
        throw std::domain_error("picard_bound_envelope: bad parameters");
    if (t < 0.0 || t > p.T) throw std::domain_error("picard_bound_envelope: t outside [0, T]");
    const double lead = std::pow(p.A * t * M_E, p.n) / std::sqrt(2.0 * M_PI * p.n);
    const double forcing = p.B * t * std::pow(std::exp(p.A * t - 1.0), p.n);
    return lead * p.rho0_sup + forcing;
}

std::vector<double> recursion_oracle(const IterationBoundParams& p,
                                     const std::vector<double>& rho0_samples, int grid_points) {
    if (grid_points < 16) throw std::invalid_argument("recursion_oracle: quadrature grid too coarse");
    if (p.n < 1) throw std::domain_error("recursion_oracle: n must be >= 1");
    const int m = grid_points;
    const double dt = p.T / (m - 1);
    std::vector<double> rho(m);
    if (static_cast<int>(rho0_samples.size()) == m) {
        rho = rho0_samples;
    } else if (rho0_samples.size() == 1) {
        rho.assign(m, rho0_samples[0]);
    } else {
        throw std::invalid_argument("recursion_oracle: rho0 must have 1 or grid_points samples");
    }
    const double l_eps = static_cast<double>(p.n);   // eps = e^-n, L_eps = n
    const double eps = std::exp(-static_cast<double>(p.n));
    std::vector<double> next(m);
    for (int k = 1; k <= p.n; ++k) {
        double acc = 0.0;
        next[0] = 0.0;
        for (int i = 1; i < m; ++i) {
            acc += 0.5 * dt * (rho[i - 1] + rho[i]);
            next[i] = p.A * l_eps * acc + eps * p.B * (i * dt);
        }
        rho.swap(next);
    }
    return rho;
}

}  // namespace euler2d
