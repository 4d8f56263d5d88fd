#include "euler2d/torus.hpp"

namespace euler2d {

double wrap_coord(double a) {
    double r = a - std::floor(a + 0.5);
    // floor rounding can land exactly on +1/2; fold it back
    if (r >= 0.5) r -= 1.0;
    if (r < -0.5) r += 1.0;
    return r;
}

Vec2 wrap(const Vec2& p) { return {wrap_coord(p.x), wrap_coord(p.y)}; }

Vec2 torus_diff(const Vec2& p, const Vec2& q) { return wrap(p - q); }

double torus_distance(const Vec2& p, const Vec2& q) { return torus_diff(p, q).norm(); }

}  // namespace euler2d
