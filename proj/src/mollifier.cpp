#include "euler2d/mollifier.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>

#include "euler2d/spectral.hpp"

namespace euler2d {

namespace {

double unit_bump_raw(double r2_times4) {
    // exp(-1/(1-s)) with s = |2y|^2, zero outside s < 1
    if (r2_times4 >= 1.0) return 0.0;
    return std::exp(-1.0 / (1.0 - r2_times4));
}

/// Composite Gauss-Legendre (8-point) quadrature of g on [a, b].
double gauss_panels(const std::function<double(double)>& g, double a, double b, int panels) {
    static const double xg[4] = {0.1834346424956498, 0.5255324099163290,
                                 0.7966664774136267, 0.9602898564975363};
    static const double wg[4] = {0.3626837833783620, 0.3137066458778873,
                                 0.2223810344533745, 0.1012285362903763};
    const double hp = (b - a) / panels;
    double total = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double mid = a + (p + 0.5) * hp;
        const double half = 0.5 * hp;
        for (int i = 0; i < 4; ++i) {
            total += wg[i] * half * (g(mid + half * xg[i]) + g(mid - half * xg[i]));
        }
    }
    return total;
}

}  // namespace

double Mollifier::profile_normalization() {
    static const double c = [] {
        // integral of exp(-1/(1-4r^2)) over the disc r < 1/2
        const double integral = 2.0 * M_PI *
            gauss_panels([](double r) { return unit_bump_raw(4.0 * r * r) * r; }, 0.0, 0.5, 64);
        return 1.0 / integral;
    }();
    return c;
}

Mollifier::Mollifier(double eps) : eps_(eps) {
    if (!(eps > 0.0) || eps > 1.0) throw std::domain_error("Mollifier: width must lie in (0, 1]");
}

double Mollifier::profile(const Vec2& y) const {
    return profile_normalization() * unit_bump_raw(4.0 * y.norm2());
}

Vec2 Mollifier::profile_grad(const Vec2& y) const {
    const double s = 4.0 * y.norm2();
    if (s >= 1.0) return {0.0, 0.0};
    const double f = profile_normalization() * std::exp(-1.0 / (1.0 - s));
    const double q = 1.0 - s;
    return y * (-8.0 * f / (q * q));
}

double Mollifier::value(const Vec2& x) const {
    const Vec2 z = wrap(x);
    return profile(z * (1.0 / eps_)) / (eps_ * eps_);
}

Vec2 Mollifier::grad(const Vec2& x) const {
    const Vec2 z = wrap(x);
    return profile_grad(z * (1.0 / eps_)) * (1.0 / (eps_ * eps_ * eps_));
}

std::vector<double> Mollifier::lattice_samples(int n, double* mass_out) const {
    if (eps_ < 2.0 / n)
        throw std::invalid_argument("Mollifier: grid does not resolve the mollifier width");
    std::vector<double> s(static_cast<size_t>(n) * n);
    const double h = 1.0 / n;
    double mass = 0.0;
    for (int iy = 0; iy < n; ++iy) {
        const double zy = wrap_coord(iy * h);
        for (int ix = 0; ix < n; ++ix) {
            const double zx = wrap_coord(ix * h);
            const double val = value({zx, zy});
            s[static_cast<size_t>(iy) * n + ix] = val;
            mass += val;
        }
    }
    mass *= h * h;
    if (mass_out) *mass_out = mass;
    return s;
}

double Mollifier::discrete_mass_correction(int n) const {
    double mass = 0.0;
    lattice_samples(n, &mass);
    return 1.0 / mass;
}

std::vector<double> Mollifier::spectral_multiplier(int n) const {
    double mass = 0.0;
    std::vector<double> samples = lattice_samples(n, &mass);
    ScalarGrid g(n, 0.0);
    const double scale = 1.0 / (mass * n * n);  // renormalize to unit discrete mass, include h^2
    for (size_t k = 0; k < samples.size(); ++k) g.v[k] = samples[k] * scale;
    std::vector<cplx> spec = forward_dft(g);
    std::vector<double> mult(spec.size());
    for (size_t k = 0; k < spec.size(); ++k) mult[k] = spec[k].real();
    return mult;
}

double Mollifier::fourier_coefficient(double kappa) {
    const double c = profile_normalization();
    return 2.0 * M_PI *
           gauss_panels(
               [&](double r) {
                   const double s = 4.0 * r * r;
                   if (s >= 1.0) return 0.0;
                   return c * std::exp(-1.0 / (1.0 - s)) *
                          std::cyl_bessel_j(0, 2.0 * M_PI * kappa * r) * r;
               },
               0.0, 0.5, 64);
}

std::vector<double> Mollifier::spectral_multiplier_exact(int n) const {
    std::vector<double> mult(static_cast<size_t>(n) * n, 1.0);
    // radial coefficients depend on |k| only; cache by squared radius
    std::map<long, double> cache;
    for (int iy = 0; iy < n; ++iy) {
        const int ky = iy <= n / 2 ? iy : iy - n;
        for (int ix = 0; ix < n; ++ix) {
            const int kx = ix <= n / 2 ? ix : ix - n;
            const long k2 = static_cast<long>(kx) * kx + static_cast<long>(ky) * ky;
            auto it = cache.find(k2);
            if (it == cache.end())
                it = cache.emplace(k2, fourier_coefficient(eps_ * std::sqrt(double(k2)))).first;
            mult[static_cast<size_t>(iy) * n + ix] = it->second;
        }
    }
    return mult;
}

double Mollifier::commutator_constant(double p) {
    if (!(p >= 1.0)) throw std::domain_error("Mollifier::commutator_constant: p must be >= 1");
    const double c = profile_normalization();
    const double integral = 2.0 * M_PI *
        gauss_panels(
            [&](double r) {
                const double s = 4.0 * r * r;
                if (s >= 1.0) return 0.0;
                const double q = 1.0 - s;
                const double gmag = c * std::exp(-1.0 / q) * 8.0 * r / (q * q);
                return std::pow(r * gmag, p) * r;
            },
            0.0, 0.5, 256);
    return std::pow(integral, 1.0 / p);
}

double Mollifier::gradient_moment(int i, int j) {
    if (i != j) return 0.0;  // angular integral of y1 y2 vanishes for the radial profile
    const double c = profile_normalization();
    // int y_i d_i rho = -8 pi int r^3 rho(r) / (1-4r^2)^2 dr (cos^2 integrates to pi)
    return -8.0 * M_PI *
           gauss_panels(
               [&](double r) {
                   const double s = 4.0 * r * r;
                   if (s >= 1.0) return 0.0;
                   const double q = 1.0 - s;
                   return r * r * r * c * std::exp(-1.0 / q) / (q * q);
               },
               0.0, 0.5, 256);
}

}  // namespace euler2d
