#include "euler2d/presets.hpp"

#include <cmath>
#include <stdexcept>

#include "euler2d/flow.hpp"
#include "euler2d/testfn.hpp"

namespace euler2d {

Xi0Preset xi0_constant(double c) {
    Xi0Preset p;
    p.name = "constant";
    p.sup_norm = std::fabs(c);
    p.f = [c](const Vec2&) { return c; };
    return p;
}

Xi0Preset xi0_shear(double amp) {
    Xi0Preset p;
    p.name = "shear";
    p.sup_norm = std::fabs(amp);
    p.f = [amp](const Vec2& x) { return amp * std::cos(2.0 * M_PI * x.x); };
    return p;
}

Xi0Preset xi0_random_trig(std::uint64_t seed, int degree, double sup_bound) {
    TestFunction poly = TestFunction::random(seed, degree, sup_bound);
    double sup = 0.0;
    const int n = 256;
    for (int iy = 0; iy < n; ++iy)
        for (int ix = 0; ix < n; ++ix)
            sup = std::max(sup, std::fabs(poly.value({(ix + 0.5) / n - 0.5, (iy + 0.5) / n - 0.5})));
    const double scale = sup > 0.0 ? sup_bound / sup : 1.0;
    Xi0Preset p;
    p.name = "random-trig";
    p.sup_norm = sup_bound;
    p.f = [poly, scale](const Vec2& x) { return scale * poly.value(x); };
    return p;
}

Xi0Preset xi0_two_patch(double amp) {
    Xi0Preset p;
    p.name = "two-patch";
    p.sup_norm = std::fabs(amp);
    p.f = [amp](const Vec2& x) {
        const double r_plus = torus_distance(x, {-0.2, -0.2});
        const double r_minus = torus_distance(x, {0.2, 0.2});
        if (r_plus < 0.15) return amp;
        if (r_minus < 0.15) return -amp;
        return 0.0;
    };
    return p;
}

Xi0Preset xi0_by_name(const std::string& name, double amplitude, std::uint64_t seed, int degree) {
    if (name == "constant") return xi0_constant(amplitude);
    if (name == "shear") return xi0_shear(amplitude);
    if (name == "random-trig") return xi0_random_trig(seed, degree, amplitude);
    if (name == "two-patch") return xi0_two_patch(amplitude);
    throw std::invalid_argument("unknown xi0 preset: " + name);
}

std::vector<double> sample_xi0(const Xi0Preset& preset, int marker_n) {
    std::vector<double> out(static_cast<size_t>(marker_n) * marker_n);
    for (size_t j = 0; j < out.size(); ++j)
        out[j] = preset.f(FlowState::marker_label(marker_n, static_cast<int>(j)));
    return out;
}

}  // namespace euler2d
