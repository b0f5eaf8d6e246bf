#pragma once

#include "gmdx/gmd.hpp"

namespace gmdx {

// Norming level b_n solving 1 - F(b_n) = 1/n for a real-valued n.
struct Norming {
  double n;
  double b;
  double b_pow_2k;   // b^{2k}
  double tail_arg;   // b^{2k} / (2 sigma^2), i.e. Q(a, tail_arg) = 2/n
  double scale;      // sigma^2/k * b^{1-2k}, slope of the affine levels

  // b^{-2k}, the small parameter of every expansion.
  double t() const { return 1.0 / b_pow_2k; }
};

inline constexpr double kMinSampleSize = 3.0;
inline constexpr double kMaxSampleSize = 1e300;

Norming solve_norming(const GmdParams& p, double n);

// u(x) = scale * x + b
double u_level(const Norming& nm, double x);
// v(y) = scale * y - b = -u(-y)
double v_level(const Norming& nm, double y);

}  // namespace gmdx
