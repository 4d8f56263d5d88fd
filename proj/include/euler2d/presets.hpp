#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "euler2d/torus.hpp"

namespace euler2d {

/// Named initial-vorticity profile with a known sup norm.
struct Xi0Preset {
    std::string name;
    double sup_norm = 0.0;
    std::function<double(const Vec2&)> f;
};

Xi0Preset xi0_constant(double c);
/// amp cos(2 pi x1): stationary shear (the induced velocity transports the
/// vorticity along its own level lines).
Xi0Preset xi0_shear(double amp);
/// Random trigonometric polynomial of max degree `degree`, rescaled so the
/// measured sup norm equals sup_bound.
Xi0Preset xi0_random_trig(std::uint64_t seed, int degree, double sup_bound);
/// Piecewise-constant two-patch profile: +amp and -amp on two discs.
Xi0Preset xi0_two_patch(double amp);

/// Preset by name (constant | shear | random-trig | two-patch).
Xi0Preset xi0_by_name(const std::string& name, double amplitude, std::uint64_t seed, int degree);

/// Samples the profile at the marker labels of an n-grid.
std::vector<double> sample_xi0(const Xi0Preset& preset, int marker_n);

}  // namespace euler2d
