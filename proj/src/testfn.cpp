#include "euler2d/testfn.hpp"

#include <cmath>

#include "euler2d/rng.hpp"

namespace euler2d {

TestFunction TestFunction::constant(double c) {
    TestFunction f;
    f.c0_ = c;
    return f;
}

TestFunction TestFunction::harmonic(int kx, int ky, double a_cos, double b_sin) {
    TestFunction f;
    f.terms_.push_back({kx, ky, a_cos, b_sin});
    return f;
}

TestFunction TestFunction::random(std::uint64_t seed, int degree, double scale) {
    TestFunction f;
    double total = 0.0;
    int idx = 0;
    // half-space of wavevectors to avoid duplicating conjugate pairs
    for (int kx = 0; kx <= degree; ++kx) {
        for (int ky = (kx == 0 ? 1 : -degree); ky <= degree; ++ky) {
            const double a = 2.0 * rng::uniform_open(rng::hash_tuple(seed, idx, 0, 0, 0)) - 1.0;
            const double b = 2.0 * rng::uniform_open(rng::hash_tuple(seed, idx, 1, 0, 0)) - 1.0;
            f.terms_.push_back({kx, ky, a, b});
            total += std::fabs(a) + std::fabs(b);
            ++idx;
        }
    }
    if (total > 0.0) {
        for (Term& t : f.terms_) {
            t.a_cos *= scale / total;
            t.b_sin *= scale / total;
        }
    }
    return f;
}

double TestFunction::value(const Vec2& x) const {
    double v = c0_;
    for (const Term& t : terms_) {
        const double ph = 2.0 * M_PI * (t.kx * x.x + t.ky * x.y);
        v += t.a_cos * std::cos(ph) + t.b_sin * std::sin(ph);
    }
    return v;
}

Vec2 TestFunction::gradient(const Vec2& x) const {
    Vec2 g{0.0, 0.0};
    for (const Term& t : terms_) {
        const double ph = 2.0 * M_PI * (t.kx * x.x + t.ky * x.y);
        const double d = 2.0 * M_PI * (-t.a_cos * std::sin(ph) + t.b_sin * std::cos(ph));
        g.x += d * t.kx;
        g.y += d * t.ky;
    }
    return g;
}

double TestFunction::laplacian(const Vec2& x) const {
    double l = 0.0;
    for (const Term& t : terms_) {
        const double ph = 2.0 * M_PI * (t.kx * x.x + t.ky * x.y);
        const double k2 = static_cast<double>(t.kx) * t.kx + static_cast<double>(t.ky) * t.ky;
        l -= 4.0 * M_PI * M_PI * k2 * (t.a_cos * std::cos(ph) + t.b_sin * std::sin(ph));
    }
    return l;
}

bool TestFunction::depends_only_on_x1() const {
    for (const Term& t : terms_)
        if (t.ky != 0 && (t.a_cos != 0.0 || t.b_sin != 0.0)) return false;
    return true;
}

int TestFunction::degree() const {
    int d = 0;
    for (const Term& t : terms_) d = std::max({d, std::abs(t.kx), std::abs(t.ky)});
    return d;
}

}  // namespace euler2d
