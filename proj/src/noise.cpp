#include "euler2d/noise.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "euler2d/rng.hpp"

namespace euler2d {

NoiseBasis NoiseBasis::constant_pair(double C) {
    if (C < 0.0) throw std::domain_error("NoiseBasis: C must be nonnegative");
    NoiseBasis b;
    b.constant_pair_ = true;
    b.a_constant_ = C;
    const double amp = std::sqrt(C);
    Field f1, f2;
    f1.amp = amp;
    f1.direction = {1.0, 0.0};
    f2.amp = amp;
    f2.direction = {0.0, 1.0};
    b.fields_ = {f1, f2};
    std::ostringstream d;
    d << "constant-pair(C=" << C << ")";
    b.description_ = d.str();
    return b;
}

NoiseBasis NoiseBasis::trig_shells(const std::vector<int>& shell_k2, double amplitude) {
    if (shell_k2.empty()) throw std::invalid_argument("NoiseBasis: empty shell list");
    if (!(amplitude > 0.0)) throw std::domain_error("NoiseBasis: amplitude must be positive");
    std::vector<std::pair<int, int>> modes;
    int shells_found = 0;
    for (int k2 : shell_k2) {
        bool any = false;
        const int r = static_cast<int>(std::sqrt(static_cast<double>(k2))) + 1;
        for (int kx = -r; kx <= r; ++kx) {
            for (int ky = -r; ky <= r; ++ky) {
                if (kx * kx + ky * ky == k2) {
                    modes.emplace_back(kx, ky);
                    any = true;
                }
            }
        }
        if (!any) throw std::invalid_argument("NoiseBasis: no wavevectors on shell |k|^2 = " +
                                              std::to_string(k2));
        ++shells_found;
    }
    NoiseBasis b = trig_modes_unchecked(modes, amplitude);
    b.a_constant_ = 2.0 * amplitude * amplitude * shells_found;
    std::ostringstream d;
    d << "trig-shells(k2={";
    for (size_t i = 0; i < shell_k2.size(); ++i) d << (i ? "," : "") << shell_k2[i];
    d << "}, amp=" << amplitude << ")";
    b.description_ = d.str();
    return b;
}

NoiseBasis NoiseBasis::trig_modes_unchecked(const std::vector<std::pair<int, int>>& modes,
                                            double amplitude) {
    NoiseBasis b;
    b.constant_pair_ = false;
    b.a_constant_ = 0.0;  // only meaningful for full shells; set by trig_shells
    for (auto [kx, ky] : modes) {
        if (kx == 0 && ky == 0) throw std::invalid_argument("NoiseBasis: zero wavevector");
        const double norm = std::sqrt(static_cast<double>(kx) * kx + static_cast<double>(ky) * ky);
        Field f;
        f.trig = true;
        f.kx = kx;
        f.ky = ky;
        f.direction = Vec2(-ky / norm, kx / norm);  // k_perp / |k|
        f.amp = amplitude;
        Field c = f;
        c.sine = false;
        Field s = f;
        s.sine = true;
        b.fields_.push_back(c);
        b.fields_.push_back(s);
    }
    b.description_ = "trig-modes(unchecked)";
    return b;
}

Vec2 NoiseBasis::eval(int k, const Vec2& x) const {
    if (k < 0 || k >= mode_count()) throw std::out_of_range("NoiseBasis::eval: mode index");
    const Field& f = fields_[k];
    if (!f.trig) return f.direction * f.amp;
    const double phase = 2.0 * M_PI * (f.kx * x.x + f.ky * x.y);
    const double val = f.sine ? std::sin(phase) : std::cos(phase);
    return f.direction * (f.amp * val);
}

Mat2 NoiseBasis::grad(int k, const Vec2& x) const {
    if (k < 0 || k >= mode_count()) throw std::out_of_range("NoiseBasis::grad: mode index");
    const Field& f = fields_[k];
    if (!f.trig) return {0.0, 0.0, 0.0, 0.0};
    const double phase = 2.0 * M_PI * (f.kx * x.x + f.ky * x.y);
    const double dv = 2.0 * M_PI * f.amp * (f.sine ? std::cos(phase) : -std::sin(phase));
    // d_j sigma_i = direction_i * dv * k_j
    return {f.direction.x * dv * f.kx, f.direction.x * dv * f.ky,
            f.direction.y * dv * f.kx, f.direction.y * dv * f.ky};
}

double NoiseBasis::l2_c01_norm() const {
    double total = 0.0;
    for (const Field& f : fields_) {
        total += f.amp * f.amp;  // sup|sigma|^2
        if (f.trig) {
            const double knorm2 = static_cast<double>(f.kx) * f.kx + static_cast<double>(f.ky) * f.ky;
            total += 4.0 * M_PI * M_PI * f.amp * f.amp * knorm2;  // Lip^2
        }
    }
    return total;
}

NoiseBasis::AIdentityCheck NoiseBasis::check_a_identity(int n) const {
    double trace_sum = 0.0;
    for (int iy = 0; iy < n; ++iy) {
        for (int ix = 0; ix < n; ++ix) {
            const Vec2 x{(ix + 0.5) / n - 0.5, (iy + 0.5) / n - 0.5};
            double a11 = 0.0, a22 = 0.0;
            for (int k = 0; k < mode_count(); ++k) {
                const Vec2 s = eval(k, x);
                a11 += s.x * s.x;
                a22 += s.y * s.y;
            }
            trace_sum += 0.5 * (a11 + a22);
        }
    }
    const double C_fit = trace_sum / (static_cast<double>(n) * n);
    double dev = 0.0;
    for (int iy = 0; iy < n; ++iy) {
        for (int ix = 0; ix < n; ++ix) {
            const Vec2 x{(ix + 0.5) / n - 0.5, (iy + 0.5) / n - 0.5};
            double a11 = 0.0, a12 = 0.0, a22 = 0.0;
            for (int k = 0; k < mode_count(); ++k) {
                const Vec2 s = eval(k, x);
                a11 += s.x * s.x;
                a12 += s.x * s.y;
                a22 += s.y * s.y;
            }
            dev = std::max({dev, std::fabs(a11 - C_fit), std::fabs(a12), std::fabs(a22 - C_fit)});
        }
    }
    return {C_fit, dev};
}

double NoiseBasis::ito_correction_sup(int n) const {
    double worst = 0.0;
    for (int iy = 0; iy < n; ++iy) {
        for (int ix = 0; ix < n; ++ix) {
            const Vec2 x{(ix + 0.5) / n - 0.5, (iy + 0.5) / n - 0.5};
            Vec2 acc{0.0, 0.0};
            for (int k = 0; k < mode_count(); ++k) {
                const Vec2 s = eval(k, x);
                const Mat2 g = grad(k, x);
                acc += g.apply(s);  // (sigma . grad) sigma, row i = sum_j sigma_j d_j sigma_i
            }
            worst = std::max(worst, acc.norm());
        }
    }
    return worst;
}

BrownianDriver::BrownianDriver(std::uint64_t seed, int mode_count, double dt, int substeps)
    : seed_(seed), modes_(mode_count), dt_(dt), substeps_(substeps) {
    if (mode_count < 0) throw std::invalid_argument("BrownianDriver: negative mode count");
    if (!(dt > 0.0)) throw std::invalid_argument("BrownianDriver: dt must be positive");
    if (substeps < 1) throw std::invalid_argument("BrownianDriver: substeps must be >= 1");
}

double BrownianDriver::increment(int realization, int mode, int step) const {
    if (mode < 0 || mode >= modes_) throw std::out_of_range("BrownianDriver::increment: mode");
    const double base_dt = dt_ / substeps_;
    const double scale = std::sqrt(base_dt);
    double acc = 0.0;
    const std::uint64_t base = static_cast<std::uint64_t>(step) * substeps_;
    for (int s = 0; s < substeps_; ++s) {
        acc += rng::gaussian(seed_, static_cast<std::uint64_t>(realization),
                             static_cast<std::uint64_t>(mode), base + s);
    }
    return acc * scale;
}

double BrownianDriver::path_value(int realization, int mode, int step) const {
    double acc = 0.0;
    for (int s = 0; s < step; ++s) acc += increment(realization, mode, s);
    return acc;
}

}  // namespace euler2d
