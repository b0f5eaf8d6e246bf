#include "gmdx/norming.hpp"

#include <cmath>
#include <sstream>

#include "gmdx/errors.hpp"
#include "gmdx/specfun.hpp"

namespace gmdx {

Norming solve_norming(const GmdParams& p, double n) {
  if (!std::isfinite(n) || n < kMinSampleSize) {
    std::ostringstream msg;
    msg << "norming degenerate at or below the median: b_2 = 0 (need n >= 3, got " << n << ")";
    throw DomainError(msg.str());
  }
  if (n > kMaxSampleSize) {
    std::ostringstream msg;
    msg << "sample size n must not exceed 1e300, got " << n;
    throw DomainError(msg.str());
  }
  const double two_s2 = 2.0 * p.sigma() * p.sigma();
  const double t = specfun::inv_reg_gamma_q(p.a(), 2.0 / n);
  Norming nm{};
  nm.n = n;
  nm.b_pow_2k = two_s2 * t;
  nm.b = std::pow(nm.b_pow_2k, 1.0 / (2.0 * p.k()));
  nm.tail_arg = t;
  nm.scale = p.sigma() * p.sigma() / p.k() * std::pow(nm.b, 1.0 - 2.0 * p.k());
  return nm;
}

double u_level(const Norming& nm, double x) { return nm.scale * x + nm.b; }

double v_level(const Norming& nm, double y) { return nm.scale * y - nm.b; }

}  // namespace gmdx
