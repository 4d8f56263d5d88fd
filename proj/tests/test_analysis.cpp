#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "euler2d/analysis.hpp"
#include "euler2d/quadrature.hpp"
#include "euler2d/rng.hpp"

using namespace euler2d;

TEST_CASE("gamma: branch values and continuity") {
    CHECK(gamma_modulus(0.0) == 0.0);
    CHECK(gamma_modulus(1.0) == 1.0);
    CHECK(gamma_modulus(2.0) == 2.0);
    const double r = std::exp(-1.0);
    CHECK(gamma_modulus(r) == doctest::Approx(2.0 * r).epsilon(1e-15));  // e^-1 (1 - (-1))
    CHECK(gamma_modulus(1.0 - 1e-12) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK_THROWS_AS(gamma_modulus(-0.1), std::domain_error);
}

TEST_CASE("gamma: nondecreasing and subadditive on random samples") {
    for (int i = 0; i < 100000; ++i) {
        const double a = 10.0 * rng::uniform_open(rng::hash_tuple(21, i, 0, 0, 0));
        const double b = 10.0 * rng::uniform_open(rng::hash_tuple(21, i, 1, 0, 0));
        CHECK(gamma_modulus(a + b) <= gamma_modulus(a) + gamma_modulus(b) + 1e-12);
    }
    double prev = 0.0;
    for (int i = 1; i <= 2000; ++i) {
        const double g = gamma_modulus(i * 2.5e-3);
        CHECK(g >= prev - 1e-15);
        prev = g;
    }
}

TEST_CASE("gamma: concave on (0, 1] (midpoint test); slope jumps up at 1") {
    // gamma' = -log r on (0,1) but jumps to 1 on r > 1, so global concavity
    // fails across the junction; the subadditivity above is the property the
    // estimates actually use (gamma(r)/r nonincreasing).
    for (int i = 0; i < 5000; ++i) {
        const double a = rng::uniform_open(rng::hash_tuple(23, i, 0, 0, 0));
        const double b = rng::uniform_open(rng::hash_tuple(23, i, 1, 0, 0));
        const double mid = 0.5 * (a + b);
        CHECK(gamma_modulus(mid) >= 0.5 * (gamma_modulus(a) + gamma_modulus(b)) - 1e-12);
    }
    const double a = 0.5, b = 1.5, mid = 1.0;
    CHECK(gamma_modulus(mid) < 0.5 * (gamma_modulus(a) + gamma_modulus(b)));
}

TEST_CASE("gamma linear bound: tangency at eps = 1/e and closed-form slack") {
    const auto tangent = gamma_linear_bound_check(std::exp(-1.0), std::exp(-1.0));
    CHECK(tangent.holds);
    CHECK(tangent.slack == doctest::Approx(0.0).epsilon(1e-14));

    const auto c = gamma_linear_bound_check(1.0, 0.1);
    CHECK(c.holds);
    CHECK(c.slack == doctest::Approx(0.1 + std::log(10.0) - 1.0).epsilon(1e-14));

    CHECK_THROWS_AS(gamma_linear_bound_check(1.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(gamma_linear_bound_check(1.0, 0.5), std::domain_error);
}

TEST_CASE("gamma linear bound: exhaustive random sampling") {
    for (int i = 0; i < 10000; ++i) {
        const double r = 10.0 * rng::uniform_open(rng::hash_tuple(29, i, 0, 0, 0));
        const double eps =
            std::exp(-1.0) * rng::uniform_open(rng::hash_tuple(29, i, 1, 0, 0));
        if (eps <= 0.0) continue;
        CHECK(gamma_linear_bound_check(r, eps).holds);
    }
}

namespace {
double ode_oracle_z(double t, double z0, double C) {
    return integrate_ode_scalar(
        [C](double, double z) { return C * gamma_modulus(std::max(z, 0.0)); }, 0.0, z0, t, 1e-11,
        1e-14);
}
}  // namespace

TEST_CASE("comparison_z: trivial branches") {
    CHECK(comparison_z(1.7, 1.0, 0.8) == doctest::Approx(std::exp(0.8 * 1.7)).epsilon(1e-14));
    CHECK(comparison_z(3.0, 0.4, 0.0) == 0.4);
    CHECK(comparison_z(0.0, 0.07, 2.0) == doctest::Approx(0.07).epsilon(1e-14));
    CHECK(comparison_z(5.0, 0.0, 1.0) == 0.0);
}

TEST_CASE("comparison_z agrees with ODE quadrature oracle") {
    // frozen oracle value for (t=0.3, z0=0.01, C=1): adaptive RK on z' = gamma(z)
    const double oracle = ode_oracle_z(0.3, 0.01, 1.0);
    CHECK(comparison_z(0.3, 0.01, 1.0) == doctest::Approx(oracle).epsilon(1e-8));
    CHECK(oracle == doctest::Approx(0.0427476).epsilon(1e-5));
    // across the crossing time as well
    for (double t : {0.1, 0.9, 1.8, 2.5}) {
        CHECK(comparison_z(t, 0.05, 1.3) ==
              doctest::Approx(ode_oracle_z(t, 0.05, 1.3)).epsilon(1e-8));
    }
}

TEST_CASE("comparison_z satisfies its integral equation on a grid") {
    const double C = 1.2, z0 = 0.02, T = 1.0;
    const int m = 257;
    std::vector<double> gz(m);
    for (int i = 0; i < m; ++i) gz[i] = C * gamma_modulus(comparison_z(T * i / (m - 1), z0, C));
    // residual of z(t) - z0 - int_0^t C gamma(z) at t = T
    const double resid = std::fabs(comparison_z(T, z0, C) - z0 - trapezoid(gz, T));
    CHECK(resid < 1e-6);
}

TEST_CASE("comparison_v: trivial values, integral equation, closed-form cross-check") {
    CHECK(comparison_v(0.0, 0.3, 2.0) == 0.3);
    CHECK(comparison_v(1.0, 0.3, 0.0) == 0.3);
    CHECK(comparison_v(2.0, 0.0, 1.0) == 0.0);

    const double C = 1.0, v0 = 0.01, T = 0.5;
    const double val = comparison_v(T, v0, C);
    const int m = 257;
    std::vector<double> gv(m);
    for (int i = 0; i < m; ++i) {
        const double v = comparison_v(T * i / (m - 1), v0, C);
        gv[i] = C * (gamma_modulus(v) + v);
    }
    CHECK(std::fabs(val - v0 - trapezoid(gv, T)) < 1e-6);

    // the log-branch closed form (exponent 2(1 - e^-Ct), growth rate 2C)
    // matches the integrator on both sides of the crossing time
    for (double t : {0.2, 0.5, 1.0, 2.0, 3.0}) {
        CHECK(comparison_v(t, v0, C) ==
              doctest::Approx(comparison_v_closed_form(t, v0, C)).epsilon(1e-8));
    }
}

TEST_CASE("comparison solutions: monotonicity in t and initial value") {
    double prev = 0.0;
    for (int i = 0; i <= 40; ++i) {
        const double z = comparison_z(i * 0.05, 0.03, 1.0);
        CHECK(z >= prev - 1e-14);
        prev = z;
    }
    CHECK(comparison_z(0.7, 0.01, 1.0) <= comparison_z(0.7, 0.02, 1.0));
    CHECK(comparison_z(0.7, 0.5, 1.0) <= comparison_z(0.7, 0.9, 1.0));
}

TEST_CASE("picard_bound: closed-form values") {
    IterationBoundParams p;
    p.A = 1.0;
    p.B = 0.0;
    p.T = 1.0;
    p.rho0_sup = 1.0;
    p.n = 1;
    CHECK(picard_bound(p, 0.5) == doctest::Approx(0.5 / std::sqrt(2.0 * M_PI)).epsilon(1e-14));
    CHECK(picard_bound(p, 0.5) == doctest::Approx(0.199471).epsilon(1e-5));

    p.B = 1.0;
    p.rho0_sup = 0.0;
    p.n = 2;
    CHECK(picard_bound(p, 0.5) == doctest::Approx(0.5 * std::exp(-1.0)).epsilon(1e-14));
    CHECK(picard_bound(p, 0.5) == doctest::Approx(0.183940).epsilon(1e-5));

    p.n = 0;
    CHECK_THROWS_AS(picard_bound(p, 0.5), std::domain_error);
}

TEST_CASE("recursion_oracle: exact small cases") {
    IterationBoundParams p;
    p.A = 1.0;
    p.B = 0.0;
    p.T = 1.0;
    p.n = 3;
    // rho0 = 0, B = 0 -> identically zero for every n
    auto zero = recursion_oracle(p, {0.0}, 128);
    for (double v : zero) CHECK(v == 0.0);

    // n = 1, A = 1, B = 0, rho0 = 1 -> rho^1(t) = t (L_eps = n = 1)
    p.n = 1;
    auto lin = recursion_oracle(p, {1.0}, 512);
    for (int i = 0; i < 512; ++i) {
        const double t = p.T * i / 511.0;
        CHECK(lin[i] == doctest::Approx(t).epsilon(1e-9));
    }
    CHECK_THROWS_AS(recursion_oracle(p, {1.0}, 8), std::invalid_argument);
}

TEST_CASE("recursion_oracle is dominated by picard_bound_envelope") {
    // the envelope carries the e^n Stirling factor; the bare 1/sqrt(2 pi n)
    // prefactor of picard_bound is NOT an upper bound for the recursion
    // (counterexample pinned below)
    for (int trial = 0; trial < 200; ++trial) {
        IterationBoundParams p;
        p.A = 0.2 + 2.0 * rng::uniform_open(rng::hash_tuple(31, trial, 0, 0, 0));
        p.B = 2.0 * rng::uniform_open(rng::hash_tuple(31, trial, 1, 0, 0));
        p.T = 0.1 + rng::uniform_open(rng::hash_tuple(31, trial, 2, 0, 0));
        p.rho0_sup = 2.0 * rng::uniform_open(rng::hash_tuple(31, trial, 3, 0, 0));
        for (int n : {1, 2, 5, 12}) {
            p.n = n;
            const auto rho = recursion_oracle(p, {p.rho0_sup}, 512);
            // pointwise from node 256 on: the iterated trapezoid overshoots
            // by O(n^3 / i^2) relative at node i, which stays below the
            // envelope's Stirling slack e^(1/12n) - 1 only for large i
            for (int i = 256; i < 512; i += 17) {
                const double t = p.T * i / 511.0;
                CHECK(rho[i] <= picard_bound_envelope(p, t) + 1e-300);
            }
            CHECK(rho.back() <= picard_bound_envelope(p, p.T) + 1e-300);
        }
    }
}

TEST_CASE("bare-prefactor bound is violated by the recursion (documented)") {
    IterationBoundParams p;
    p.A = 1.0;
    p.B = 0.0;
    p.T = 1.0;
    p.rho0_sup = 1.0;
    p.n = 1;
    const auto rho = recursion_oracle(p, {1.0}, 512);
    // rho^1(t) = t exceeds (A t)^n / sqrt(2 pi n) = t / 2.5066
    const double t255 = p.T * 255.0 / 511.0;
    CHECK(rho[255] > picard_bound(p, t255));
    CHECK(rho.back() > picard_bound(p, 1.0));
}

TEST_CASE("picard_bound vanishes uniformly when A T* < 1") {
    IterationBoundParams p;
    p.A = 1.5;
    p.B = 2.0;
    p.T = 0.6;  // A T = 0.9 < 1
    p.rho0_sup = 3.0;
    double prev = 1e300;
    for (int n = 1; n <= 150; ++n) {
        p.n = n;
        double sup = 0.0;
        for (int i = 0; i <= 32; ++i) sup = std::max(sup, picard_bound(p, p.T * i / 32.0));
        if (n > 5) CHECK(sup < prev);
        prev = sup;
    }
    CHECK(prev < 1e-3);
}
