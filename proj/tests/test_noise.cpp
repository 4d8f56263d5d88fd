#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "euler2d/noise.hpp"
#include "euler2d/grid.hpp"
#include "euler2d/spectral.hpp"

using namespace euler2d;

TEST_CASE("constant pair: field values and exact isotropy") {
    const NoiseBasis b = NoiseBasis::constant_pair(0.5);
    REQUIRE(b.mode_count() == 2);
    for (double x : {-0.4, 0.0, 0.3}) {
        const Vec2 s1 = b.eval(0, {x, -x});
        CHECK(s1.x == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
        CHECK(s1.y == 0.0);
        const Vec2 s2 = b.eval(1, {x, -x});
        CHECK(s2.x == 0.0);
        CHECK(s2.y == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
    }
    const auto chk = b.check_a_identity(32);
    CHECK(chk.C_estimate == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(chk.max_deviation < 1e-14);
    CHECK(b.l2_c01_norm() == doctest::Approx(1.0).epsilon(1e-14));  // 2 sup^2 = 2C
    CHECK_THROWS_AS(b.eval(2, {0, 0}), std::out_of_range);
}

TEST_CASE("trig shells: divergence-free fields, exact isotropy over full shells") {
    const double amp = 0.3;
    const NoiseBasis b = NoiseBasis::trig_shells({1}, amp);
    REQUIRE(b.mode_count() == 8);  // 4 wavevectors x (cos, sin)

    // one of the shipped fields is c cos(2 pi x1) (0,1) (wavevector (1,0))
    bool found = false;
    for (int k = 0; k < b.mode_count(); ++k) {
        const Vec2 v0 = b.eval(k, {0.0, 0.0});
        const Vec2 vq = b.eval(k, {0.25, 0.0});
        if (std::fabs(v0.x) < 1e-15 && std::fabs(v0.y - amp) < 1e-15 && vq.norm() < 1e-15)
            found = true;
    }
    CHECK(found);

    // spectral divergence of every sigma_k on a grid
    const int n = 64;
    for (int k = 0; k < b.mode_count(); ++k) {
        VectorGrid s(n);
        for (int iy = 0; iy < n; ++iy)
            for (int ix = 0; ix < n; ++ix) s.set(ix, iy, b.eval(k, s.point(ix, iy)));
        CHECK(spectral_divergence_max(s) < 1e-12);
    }

    const auto chk = b.check_a_identity(64);
    CHECK(chk.C_estimate == doctest::Approx(2.0 * amp * amp).epsilon(1e-13));
    CHECK(chk.max_deviation < 1e-12);
    CHECK(b.a_constant() == doctest::Approx(2.0 * amp * amp).epsilon(1e-15));

    // closed-form l2(C^{0,1}) norm: 8 amp^2 (1 + 4 pi^2 |k|^2), |k|^2 = 1
    CHECK(b.l2_c01_norm() ==
          doctest::Approx(8.0 * amp * amp * (1.0 + 4.0 * M_PI * M_PI)).epsilon(1e-13));
}

TEST_CASE("single unpaired trig mode breaks isotropy at order amplitude^2") {
    const double amp = 0.2;
    const NoiseBasis bad = NoiseBasis::trig_modes_unchecked({{1, 0}}, amp);
    const auto chk = bad.check_a_identity(32);
    CHECK(chk.max_deviation > 0.4 * amp * amp);
}

TEST_CASE("Ito-Stratonovich correction vanishes for the shipped bases") {
    CHECK(NoiseBasis::constant_pair(1.0).ito_correction_sup(32) < 1e-12);
    CHECK(NoiseBasis::trig_shells({1}, 0.4).ito_correction_sup(48) < 1e-12);
    CHECK(NoiseBasis::trig_shells({1, 2}, 0.25).ito_correction_sup(48) < 1e-12);
}

TEST_CASE("analytic sigma gradients match finite differences") {
    const NoiseBasis b = NoiseBasis::trig_shells({1, 2}, 0.35);
    const double h = 1e-6;
    for (int k = 0; k < b.mode_count(); ++k) {
        const Vec2 x{0.17, -0.29};
        const Mat2 g = b.grad(k, x);
        const Vec2 dx = (b.eval(k, {x.x + h, x.y}) - b.eval(k, {x.x - h, x.y})) * (0.5 / h);
        const Vec2 dy = (b.eval(k, {x.x, x.y + h}) - b.eval(k, {x.x, x.y - h})) * (0.5 / h);
        CHECK(g.a11 == doctest::Approx(dx.x).epsilon(1e-6));
        CHECK(g.a21 == doctest::Approx(dx.y).epsilon(1e-6));
        CHECK(g.a12 == doctest::Approx(dy.x).epsilon(1e-6));
        CHECK(g.a22 == doctest::Approx(dy.y).epsilon(1e-6));
    }
}

TEST_CASE("driver: replayability and Gaussian increment statistics") {
    const BrownianDriver d(77, 4, 0.01);
    CHECK(d.increment(3, 1, 17) == d.increment(3, 1, 17));
    CHECK(d.increment(3, 1, 17) != d.increment(3, 1, 18));
    CHECK(d.increment(3, 1, 17) != d.increment(3, 2, 17));
    CHECK(d.increment(3, 1, 17) != d.increment(4, 1, 17));

    const int n = 1000000;
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double g = d.increment(i % 1024, i % 4, i / 1024);
        sum += g;
        sum2 += g * g;
    }
    const double mean = sum / n;
    const double var = sum2 / n - mean * mean;
    const double sigma = std::sqrt(0.01);
    CHECK(std::fabs(mean) < 4.0 * sigma / 1000.0);
    CHECK(var == doctest::Approx(0.01).epsilon(0.01));
}

TEST_CASE("driver: base-lattice refinement consistency") {
    // increments on a coarse step equal the sum of the fine-step increments
    // sharing the base lattice
    const BrownianDriver coarse(5, 2, 0.1, 2);
    const BrownianDriver fine(5, 2, 0.05, 1);
    for (int step = 0; step < 20; ++step) {
        const double a = coarse.increment(7, 1, step);
        const double b = fine.increment(7, 1, 2 * step) + fine.increment(7, 1, 2 * step + 1);
        CHECK(a == doctest::Approx(b).epsilon(1e-15));
    }
    CHECK(coarse.path_value(7, 1, 10) == doctest::Approx(fine.path_value(7, 1, 20)).epsilon(1e-12));
}
