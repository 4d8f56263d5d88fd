#pragma once

namespace euler2d {

/// Exponential integral E1(x) = int_x^inf e^-t / t dt for x > 0.
/// Power series below x = 1, modified Lentz continued fraction above;
/// relative accuracy about 1e-14 across the range.
double exp_integral_e1(double x);

}  // namespace euler2d
