#include "euler2d/kernel.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "euler2d/analysis.hpp"
#include "euler2d/mollifier.hpp"
#include "euler2d/rng.hpp"
#include "euler2d/spectral.hpp"

namespace euler2d {

KernelEvaluator::KernelEvaluator(const GreenSplitConfig& cfg, const KernelTableSpec& spec)
    : cfg_(cfg), eps_(0.0), core_cells_(spec.core_cells), table_(spec.n, 0.0) {
    cfg_.validate();
    if (spec.n < 16) throw std::invalid_argument("KernelEvaluator: table resolution too small");
    if (spec.core_cells < 2) throw std::invalid_argument("KernelEvaluator: core must span >= 2 cells");
    const int n = spec.n;
    for (int iy = 0; iy < n; ++iy) {
        for (int ix = 0; ix < n; ++ix) {
            const Vec2 z = table_.point(ix, iy);
            if (z.x == 0.0 && z.y == 0.0) {
                table_.set(ix, iy, {0.0, 0.0});  // singular entry, covered by the core
                continue;
            }
            table_.set(ix, iy, biot_savart_exact(z, cfg_));
        }
    }
}

KernelEvaluator::KernelEvaluator(const GreenSplitConfig& cfg, double eps, int grid_n)
    : cfg_(cfg), eps_(eps), core_cells_(0), table_(grid_n, 0.0) {
    cfg_.validate();
    if (!(eps > 0.0)) throw std::invalid_argument("KernelEvaluator: mollified form needs eps > 0");
    const int n = grid_n;
    const Mollifier rho(eps);
    const std::vector<double> mult = rho.spectral_multiplier_exact(n);
    // K_hat(k) = -i k_perp / (2 pi |k|^2); build K^eps = IDFT(K_hat rho_hat)
    std::vector<cplx> sx(static_cast<size_t>(n) * n, 0.0), sy(sx.size(), 0.0);
    for (int iy = 0; iy < n; ++iy) {
        const int ky = wavenumber(iy, n);
        for (int ix = 0; ix < n; ++ix) {
            const int kx = wavenumber(ix, n);
            if ((kx == 0 && ky == 0) || ix == n / 2 || iy == n / 2) continue;
            const size_t idx = static_cast<size_t>(iy) * n + ix;
            const double k2 = static_cast<double>(kx) * kx + static_cast<double>(ky) * ky;
            const double m = mult[idx] / (2.0 * M_PI * k2);
            // times n^2: the fft inverse applies 1/n^2 while these are
            // continuum coefficients already
            const double scale = static_cast<double>(n) * static_cast<double>(n);
            sx[idx] = cplx(0.0, ky * m * scale);
            sy[idx] = cplx(0.0, -kx * m * scale);
        }
    }
    fft_2d(sx, n, true);
    fft_2d(sy, n, true);
    // fft index m holds the value at lattice point m h (mod 1); shift by n/2
    // so entry j corresponds to the grid coordinate j h - 1/2
    for (int iy = 0; iy < n; ++iy) {
        for (int ix = 0; ix < n; ++ix) {
            const size_t src = static_cast<size_t>(iy) * n + ix;
            const size_t dst =
                static_cast<size_t>((iy + n / 2) % n) * n + static_cast<size_t>((ix + n / 2) % n);
            table_.vx[dst] = sx[src].real();
            table_.vy[dst] = sy[src].real();
        }
    }
}

Vec2 KernelEvaluator::operator()(const Vec2& x0) const {
    const Vec2 x = wrap(x0);
    if (mollified()) return interp_bicubic(table_, x);
    if (x.x == 0.0 && x.y == 0.0)
        throw std::domain_error("KernelEvaluator: exact kernel is singular at 0");
    if (x.norm2() < core_radius() * core_radius()) return biot_savart_exact(x, cfg_);
    return interp_bicubic(table_, x);
}

double KernelEvaluator::sup_norm() const { return table_.sup_norm(); }

namespace {
constexpr char kTableMagic[8] = {'E', '2', 'D', 'K', 'T', 'B', 'L', '1'};
}

std::string KernelEvaluator::to_bytes() const {
    std::ostringstream out(std::ios::binary);
    out.write(kTableMagic, 8);
    const std::uint32_t version = 1;
    const std::uint32_t n = table_.n;
    const std::uint32_t core = core_cells_;
    const std::uint32_t fc = cfg_.fourier_cutoff;
    const std::uint32_t ic = cfg_.image_cutoff;
    out.write(reinterpret_cast<const char*>(&version), 4);
    out.write(reinterpret_cast<const char*>(&n), 4);
    out.write(reinterpret_cast<const char*>(&core), 4);
    out.write(reinterpret_cast<const char*>(&fc), 4);
    out.write(reinterpret_cast<const char*>(&ic), 4);
    out.write(reinterpret_cast<const char*>(&cfg_.split_time), 8);
    out.write(reinterpret_cast<const char*>(&cfg_.tail_tolerance), 8);
    out.write(reinterpret_cast<const char*>(&eps_), 8);
    for (size_t k = 0; k < table_.vx.size(); ++k) {
        out.write(reinterpret_cast<const char*>(&table_.vx[k]), 8);
        out.write(reinterpret_cast<const char*>(&table_.vy[k]), 8);
    }
    return out.str();
}

void KernelEvaluator::save(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("KernelEvaluator::save: cannot open " + path);
    const std::string bytes = to_bytes();
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("KernelEvaluator::save: write failed for " + path);
}

KernelEvaluator KernelEvaluator::from_bytes(const std::string& bytes) {
    std::istringstream in(bytes, std::ios::binary);
    char magic[8];
    in.read(magic, 8);
    if (!in || std::memcmp(magic, kTableMagic, 8) != 0)
        throw std::runtime_error("KernelEvaluator::from_bytes: bad magic");
    std::uint32_t version = 0, n = 0, core = 0, fc = 0, ic = 0;
    in.read(reinterpret_cast<char*>(&version), 4);
    in.read(reinterpret_cast<char*>(&n), 4);
    in.read(reinterpret_cast<char*>(&core), 4);
    in.read(reinterpret_cast<char*>(&fc), 4);
    in.read(reinterpret_cast<char*>(&ic), 4);
    if (version != 1) throw std::runtime_error("KernelEvaluator::load: unsupported version");
    KernelEvaluator k;
    k.cfg_.fourier_cutoff = fc;
    k.cfg_.image_cutoff = ic;
    in.read(reinterpret_cast<char*>(&k.cfg_.split_time), 8);
    in.read(reinterpret_cast<char*>(&k.cfg_.tail_tolerance), 8);
    in.read(reinterpret_cast<char*>(&k.eps_), 8);
    k.core_cells_ = core;
    k.table_ = VectorGrid(n, 0.0);
    for (size_t i = 0; i < k.table_.vx.size(); ++i) {
        in.read(reinterpret_cast<char*>(&k.table_.vx[i]), 8);
        in.read(reinterpret_cast<char*>(&k.table_.vy[i]), 8);
    }
    if (!in) throw std::runtime_error("KernelEvaluator::from_bytes: truncated data");
    return k;
}

KernelEvaluator KernelEvaluator::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("KernelEvaluator::load: cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return from_bytes(ss.str());
}

double kernel_l1_norm(const KernelEvaluator& k, const TorusQuadConfig& quad_in) {
    TorusQuadConfig quad = quad_in;
    quad.envelope_coeff = 1.0 / (2.0 * M_PI);
    if (k.mollified()) quad.envelope_coeff = 0.0;
    return integrate_torus_singular([&](const Vec2& z) { return k(z).norm(); },
                                    k.mollified() ? std::vector<Vec2>{} : std::vector<Vec2>{{0.0, 0.0}},
                                    quad);
}

double kernel_l1_distance(const KernelEvaluator& exact, const KernelEvaluator& mollified,
                          const TorusQuadConfig& quad_in) {
    TorusQuadConfig quad = quad_in;
    quad.envelope_coeff = 1.0 / (2.0 * M_PI);
    return integrate_torus_singular(
        [&](const Vec2& z) { return (mollified(z) - exact(z)).norm(); }, {{0.0, 0.0}}, quad);
}

double kernel_difference_l1(const KernelEvaluator& k, const Vec2& x, const Vec2& xprime,
                            const TorusQuadConfig& quad_in) {
    const Vec2 d = torus_diff(x, xprime);
    TorusQuadConfig quad = quad_in;
    quad.envelope_coeff = 1.0 / (2.0 * M_PI);
    // int |K(z) - K(z - d)| dz, singular at z = 0 and z = d
    return integrate_torus_singular(
        [&](const Vec2& z) { return (k(z) - k(z - d)).norm(); }, {{0.0, 0.0}, d}, quad);
}

double log_lipschitz_ratio(const KernelEvaluator& k, const Vec2& x, const Vec2& xprime,
                           const TorusQuadConfig& quad) {
    const double sep = torus_distance(x, xprime);
    if (sep == 0.0) throw std::domain_error("log_lipschitz_ratio: coincident points");
    return kernel_difference_l1(k, x, xprime, quad) / gamma_modulus(sep);
}

LogLipschitzSweep log_lipschitz_sweep(const KernelEvaluator& k, int pairs, std::uint64_t seed,
                                      double min_sep, double max_sep, const TorusQuadConfig& quad) {
    LogLipschitzSweep out;
    out.min_separation = min_sep;
    out.max_separation = max_sep;
    out.ratios.reserve(pairs);
    for (int i = 0; i < pairs; ++i) {
        const double u = rng::uniform_open(rng::hash_tuple(seed, i, 0, 0, 0));
        const double sep = min_sep * std::pow(max_sep / min_sep, u);
        const double ang = 2.0 * M_PI * rng::uniform_open(rng::hash_tuple(seed, i, 1, 0, 0));
        const Vec2 x{wrap_coord(rng::uniform_open(rng::hash_tuple(seed, i, 2, 0, 0)) - 0.5),
                     wrap_coord(rng::uniform_open(rng::hash_tuple(seed, i, 3, 0, 0)) - 0.5)};
        const Vec2 xp = wrap(x + Vec2{sep * std::cos(ang), sep * std::sin(ang)});
        if (torus_distance(x, xp) == 0.0) continue;
        const double r = log_lipschitz_ratio(k, x, xp, quad);
        out.ratios.push_back(r);
        out.max_ratio = std::max(out.max_ratio, r);
    }
    return out;
}

ScalarGrid mollify_field(const ScalarGrid& w, double eps) {
    const Mollifier rho(eps);
    return spectral_convolve(w, rho.spectral_multiplier(w.n));
}

VectorGrid mollify_field(const VectorGrid& w, double eps) {
    const Mollifier rho(eps);
    const std::vector<double> mult = rho.spectral_multiplier(w.n);
    ScalarGrid cx(w.n, w.offset), cy(w.n, w.offset);
    cx.v = w.vx;
    cy.v = w.vy;
    VectorGrid out(w.n, w.offset);
    out.vx = spectral_convolve(cx, mult).v;
    out.vy = spectral_convolve(cy, mult).v;
    return out;
}

}  // namespace euler2d
