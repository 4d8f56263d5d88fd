#include "euler2d/spectral.hpp"

#include <cmath>
#include <stdexcept>

namespace euler2d {

std::vector<cplx> forward_dft(const ScalarGrid& f) {
    const int n = f.n;
    std::vector<cplx> spec(static_cast<size_t>(n) * n);
    for (size_t k = 0; k < spec.size(); ++k) spec[k] = f.v[k];
    fft_2d(spec, n, false);
    return spec;
}

ScalarGrid inverse_dft(std::vector<cplx> spec, int n, double offset) {
    fft_2d(spec, n, true);
    ScalarGrid out(n, offset);
    for (size_t k = 0; k < spec.size(); ++k) out.v[k] = spec[k].real();
    return out;
}

VectorGrid velocity_from_vorticity(const ScalarGrid& xi, const std::vector<double>* multiplier) {
    const int n = xi.n;
    std::vector<cplx> spec = forward_dft(xi);
    std::vector<cplx> ux(spec.size()), uy(spec.size());
    for (int iy = 0; iy < n; ++iy) {
        const int ky = wavenumber(iy, n);
        for (int ix = 0; ix < n; ++ix) {
            const int kx = wavenumber(ix, n);
            const size_t idx = static_cast<size_t>(iy) * n + ix;
            if ((kx == 0 && ky == 0) || ix == n / 2 || iy == n / 2) {
                ux[idx] = uy[idx] = 0.0;
                continue;
            }
            const double k2 = static_cast<double>(kx) * kx + static_cast<double>(ky) * ky;
            // u_hat = -i k_perp xi_hat / (2 pi |k|^2), k_perp = (-ky, kx)
            cplx m = spec[idx] / (2.0 * M_PI * k2);
            if (multiplier) m *= (*multiplier)[idx];
            ux[idx] = cplx(0.0, 1.0) * static_cast<double>(ky) * m;
            uy[idx] = cplx(0.0, -1.0) * static_cast<double>(kx) * m;
        }
    }
    fft_2d(ux, n, true);
    fft_2d(uy, n, true);
    VectorGrid u(n, xi.offset);
    for (size_t k = 0; k < ux.size(); ++k) {
        u.vx[k] = ux[k].real();
        u.vy[k] = uy[k].real();
    }
    return u;
}

ScalarGrid spectral_derivative(const ScalarGrid& f, int dim) {
    const int n = f.n;
    std::vector<cplx> spec = forward_dft(f);
    for (int iy = 0; iy < n; ++iy) {
        const int ky = wavenumber(iy, n);
        for (int ix = 0; ix < n; ++ix) {
            const int kx = wavenumber(ix, n);
            const size_t idx = static_cast<size_t>(iy) * n + ix;
            if (ix == n / 2 || iy == n / 2) {
                spec[idx] = 0.0;
                continue;
            }
            const double k = dim == 0 ? kx : ky;
            spec[idx] *= cplx(0.0, 2.0 * M_PI * k);
        }
    }
    fft_2d(spec, n, true);
    ScalarGrid out(n, f.offset);
    for (size_t k = 0; k < spec.size(); ++k) out.v[k] = spec[k].real();
    return out;
}

double spectral_divergence_max(const VectorGrid& u) {
    const int n = u.n;
    ScalarGrid gx(n, u.offset), gy(n, u.offset);
    gx.v = u.vx;
    gy.v = u.vy;
    std::vector<cplx> sx = forward_dft(gx);
    std::vector<cplx> sy = forward_dft(gy);
    double worst = 0.0;
    const double norm = 1.0 / (static_cast<double>(n) * n);
    for (int iy = 0; iy < n; ++iy) {
        const int ky = wavenumber(iy, n);
        for (int ix = 0; ix < n; ++ix) {
            const int kx = wavenumber(ix, n);
            const size_t idx = static_cast<size_t>(iy) * n + ix;
            const double d = std::abs(static_cast<double>(kx) * sx[idx] +
                                      static_cast<double>(ky) * sy[idx]) * norm;
            worst = std::max(worst, d);
        }
    }
    return worst;
}

ScalarGrid spectral_convolve(const ScalarGrid& f, const std::vector<double>& multiplier) {
    const int n = f.n;
    if (multiplier.size() != static_cast<size_t>(n) * n)
        throw std::invalid_argument("spectral_convolve: multiplier size mismatch");
    std::vector<cplx> spec = forward_dft(f);
    for (size_t k = 0; k < spec.size(); ++k) spec[k] *= multiplier[k];
    return inverse_dft(std::move(spec), n, f.offset);
}

VectorGrid spectral_gradient(const ScalarGrid& f) {
    VectorGrid g(f.n, f.offset);
    ScalarGrid gx = spectral_derivative(f, 0);
    ScalarGrid gy = spectral_derivative(f, 1);
    g.vx = std::move(gx.v);
    g.vy = std::move(gy.v);
    return g;
}

}  // namespace euler2d
