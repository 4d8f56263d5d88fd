#include "euler2d/green.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "euler2d/expint.hpp"

namespace euler2d {

void GreenSplitConfig::validate() const {
    if (split_time <= 0.0) throw std::invalid_argument("GreenSplitConfig: split_time must be positive");
    if (fourier_cutoff < 1 || image_cutoff < 1)
        throw std::invalid_argument("GreenSplitConfig: cutoffs must be >= 1");
    if (!(tail_tolerance > 0.0))
        throw std::invalid_argument("GreenSplitConfig: tail_tolerance must be positive");
    if (green_split_truncation_bound(*this) > tail_tolerance)
        throw std::invalid_argument("GreenSplitConfig: cutoffs do not certify tail_tolerance");
}

double green_split_truncation_bound(const GreenSplitConfig& cfg) {
    // Fourier tail: coefficients e^{-4 pi^2 |k|^2 tau} / (4 pi^2 |k|^2); bound
    // the shell |k|_inf = m > cutoff by its 8m lattice points at |k| >= m.
    double fourier_tail = 0.0;
    for (int m = cfg.fourier_cutoff + 1; m < cfg.fourier_cutoff + 40; ++m) {
        const double k2 = static_cast<double>(m) * m;
        fourier_tail += 8.0 * m * std::exp(-4.0 * M_PI * M_PI * k2 * cfg.split_time) /
                        (4.0 * M_PI * M_PI * k2);
    }
    // Image tail: shell |l|_inf = m contributes at most 8m terms with
    // |x - l| >= m - 3/4 for x in the fundamental square.
    double image_tail = 0.0;
    for (int m = cfg.image_cutoff + 1; m < cfg.image_cutoff + 40; ++m) {
        const double d2 = (m - 0.75) * (m - 0.75);
        image_tail += 8.0 * m * exp_integral_e1(d2 / (4.0 * cfg.split_time)) / (4.0 * M_PI);
        // same shells bound the gradient-sum tail, whose terms are larger by
        // a factor |x-l| / 2; fold it in so one bound certifies both
        image_tail += 8.0 * m * std::exp(-d2 / (4.0 * cfg.split_time)) / (2.0 * M_PI * (m - 0.75));
    }
    return fourier_tail + image_tail;
}

double green_fourier(const Vec2& x0, int kmax) {
    if (kmax < 1) throw std::invalid_argument("green_fourier: kmax must be >= 1");
    const Vec2 x = wrap(x0);
    // Chebyshev recurrences for cos/sin(2 pi k x_i), k = 0..kmax
    std::vector<double> c1(kmax + 1), s1(kmax + 1), c2(kmax + 1), s2(kmax + 1);
    const double a1 = 2.0 * M_PI * x.x, a2 = 2.0 * M_PI * x.y;
    c1[0] = 1.0; s1[0] = 0.0; c2[0] = 1.0; s2[0] = 0.0;
    if (kmax >= 1) {
        c1[1] = std::cos(a1); s1[1] = std::sin(a1);
        c2[1] = std::cos(a2); s2[1] = std::sin(a2);
        for (int k = 2; k <= kmax; ++k) {
            c1[k] = 2.0 * c1[1] * c1[k - 1] - c1[k - 2];
            s1[k] = 2.0 * c1[1] * s1[k - 1] - s1[k - 2];
            c2[k] = 2.0 * c2[1] * c2[k - 1] - c2[k - 2];
            s2[k] = 2.0 * c2[1] * s2[k - 1] - s2[k - 2];
        }
    }
    // sum over k1 >= 0; weight 2 for k1 > 0 (pairs with -k), handle k1 = 0 row
    double total = 0.0;
    for (int k1 = 0; k1 <= kmax; ++k1) {
        double row = 0.0;
        for (int k2 = -kmax; k2 <= kmax; ++k2) {
            if (k1 == 0 && k2 <= 0) continue;  // k2 < 0 paired with k2 > 0 below
            const double kk = static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2;
            const int ak2 = k2 < 0 ? -k2 : k2;
            // cos(2 pi (k1 x1 + k2 x2)) via angle addition
            const double cv = k2 >= 0 ? c1[k1] * c2[ak2] - s1[k1] * s2[ak2]
                                      : c1[k1] * c2[ak2] + s1[k1] * s2[ak2];
            row += cv / kk * (k1 == 0 ? 2.0 : 1.0);
        }
        total += (k1 > 0 ? 2.0 : 1.0) * row;
    }
    return -total / (4.0 * M_PI * M_PI);
}

Vec2 biot_savart_fourier(const Vec2& x0, int kmax) {
    if (kmax < 1) throw std::invalid_argument("biot_savart_fourier: kmax must be >= 1");
    const Vec2 x = wrap(x0);
    // K(x) = sum_{k != 0} k_perp sin(2 pi k.x) / (2 pi |k|^2); pair k with -k
    Vec2 total{0.0, 0.0};
    for (int k1 = 0; k1 <= kmax; ++k1) {
        for (int k2 = -kmax; k2 <= kmax; ++k2) {
            if (k1 == 0 && k2 <= 0) continue;
            const double kk = static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2;
            const double sv = std::sin(2.0 * M_PI * (k1 * x.x + k2 * x.y));
            const double w = sv / (M_PI * kk);  // factor 2 from the +-k pair
            total.x += -k2 * w;
            total.y += k1 * w;
        }
    }
    return total;
}

namespace {

struct ImageExpTables {
    std::vector<double> ex, ey, dx, dy;
    int cutoff;
};

ImageExpTables image_tables(const Vec2& x, const GreenSplitConfig& cfg) {
    ImageExpTables t;
    t.cutoff = cfg.image_cutoff;
    const int L = cfg.image_cutoff;
    t.ex.resize(2 * L + 1);
    t.ey.resize(2 * L + 1);
    t.dx.resize(2 * L + 1);
    t.dy.resize(2 * L + 1);
    const double inv4t = 1.0 / (4.0 * cfg.split_time);
    for (int l = -L; l <= L; ++l) {
        const double ddx = x.x - l;
        const double ddy = x.y - l;
        t.dx[l + L] = ddx;
        t.dy[l + L] = ddy;
        t.ex[l + L] = std::exp(-ddx * ddx * inv4t);
        t.ey[l + L] = std::exp(-ddy * ddy * inv4t);
    }
    return t;
}

}  // namespace

double green_split(const Vec2& x0, const GreenSplitConfig& cfg) {
    const Vec2 x = wrap(x0);
    if (x.x == 0.0 && x.y == 0.0)
        throw std::domain_error("green_split: Green function is singular at 0");
    const double tau = cfg.split_time;

    // G1: rapidly convergent Fourier tail
    double g1 = 0.0;
    for (int k1 = -cfg.fourier_cutoff; k1 <= cfg.fourier_cutoff; ++k1) {
        for (int k2 = -cfg.fourier_cutoff; k2 <= cfg.fourier_cutoff; ++k2) {
            if (k1 == 0 && k2 == 0) continue;
            const double kk = static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2;
            g1 += std::exp(-4.0 * M_PI * M_PI * kk * tau) / (4.0 * M_PI * M_PI * kk) *
                  std::cos(2.0 * M_PI * (k1 * x.x + k2 * x.y));
        }
    }

    // G3 + G4: -tau + sum over all images of (1/4pi) E1(|x-l|^2 / 4 tau)
    const ImageExpTables t = image_tables(x, cfg);
    const int L = cfg.image_cutoff;
    double g34 = -tau;
    for (int l2 = -L; l2 <= L; ++l2) {
        for (int l1 = -L; l1 <= L; ++l1) {
            const double r2 = t.dx[l1 + L] * t.dx[l1 + L] + t.dy[l2 + L] * t.dy[l2 + L];
            g34 += exp_integral_e1(r2 / (4.0 * tau)) / (4.0 * M_PI);
        }
    }
    return -g1 - g34;
}

Vec2 biot_savart_exact(const Vec2& x0, const GreenSplitConfig& cfg) {
    const Vec2 x = wrap(x0);
    if (x.x == 0.0 && x.y == 0.0)
        throw std::domain_error("biot_savart_exact: kernel is singular at 0");
    const double tau = cfg.split_time;

    // gradient image sum: grad G gets (x-l) e^{-|x-l|^2/4 tau} / (2 pi |x-l|^2)
    const ImageExpTables t = image_tables(x, cfg);
    const int L = cfg.image_cutoff;
    Vec2 grad{0.0, 0.0};
    for (int l2 = -L; l2 <= L; ++l2) {
        const double gy = t.dy[l2 + L];
        const double ey = t.ey[l2 + L];
        for (int l1 = -L; l1 <= L; ++l1) {
            const double gx = t.dx[l1 + L];
            const double r2 = gx * gx + gy * gy;
            const double w = t.ex[l1 + L] * ey / (2.0 * M_PI * r2);
            grad.x += gx * w;
            grad.y += gy * w;
        }
    }

    // Fourier-tail gradient: -(grad G1) = sum a_k 2 pi k sin(2 pi k.x)
    for (int k1 = -cfg.fourier_cutoff; k1 <= cfg.fourier_cutoff; ++k1) {
        for (int k2 = -cfg.fourier_cutoff; k2 <= cfg.fourier_cutoff; ++k2) {
            if (k1 == 0 && k2 == 0) continue;
            const double kk = static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2;
            const double a = std::exp(-4.0 * M_PI * M_PI * kk * tau) / (4.0 * M_PI * M_PI * kk);
            const double sv = std::sin(2.0 * M_PI * (k1 * x.x + k2 * x.y));
            grad.x += a * 2.0 * M_PI * k1 * sv;
            grad.y += a * 2.0 * M_PI * k2 * sv;
        }
    }
    return grad.perp();
}

}  // namespace euler2d
