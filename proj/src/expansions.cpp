#include "gmdx/expansions.hpp"

#include <cmath>
#include <string>

#include "gmdx/errors.hpp"

namespace gmdx {

ApproxOrder parse_order(int order) {
  switch (order) {
    case 1: return ApproxOrder::First;
    case 2: return ApproxOrder::Second;
    case 3: return ApproxOrder::Third;
    default: throw UsageError("order must be 1, 2 or 3, got " + std::to_string(order));
  }
}

namespace expansions {
namespace {

// Every Gumbel-weighted term is written as poly * exp(lin + log-weight) so
// that e^{y} growth and exp(-e^{y}) decay meet inside one exponent.
double weighted(double coef, double exponent) {
  if (coef == 0.0) return 0.0;
  return coef * std::exp(exponent);
}

// log Lambda(x)
double log_gumbel(double x) { return -std::exp(-x); }

}  // namespace

double gumbel(double x) { return std::exp(-std::exp(-x)); }

double l_poly(const GmdParams& p, double x) {
  const double k = p.k();
  const double s2 = p.sigma() * p.sigma();
  return s2 / (2.0 * k) * ((2.0 * k - 1.0) * x * x - 2.0 * x);
}

double w_poly(const GmdParams& p, double x) {
  const double k = p.k();
  const double s4 = std::pow(p.sigma(), 4);
  const double km = 2.0 * k - 1.0;
  const double kp = 2.0 * k + 1.0;
  const double x3 = x * x * x;
  return -s4 / (24.0 * k * k) * (3.0 * km * km * x3 * x - 4.0 * kp * km * x3 - 48.0 * k * x);
}

double l_k(const GmdParams& p, double x) { return weighted(l_poly(p, x), -x); }

double w_k(const GmdParams& p, double x) { return weighted(w_poly(p, x), -x); }

DensityFactorCoeffs density_factor_coeffs(const GmdParams& p, double x) {
  const double k = p.k();
  const double s2 = p.sigma() * p.sigma();
  const double km = 2.0 * k - 1.0;
  const double x2 = x * x;
  DensityFactorCoeffs d{};
  d.d1 = -s2 * (km / (2.0 * k) * x2 - 2.0 * x + 1.0 / k);
  d.d2 = s2 * s2 / k *
         (km * km / (8.0 * k) * x2 * x2 - km * (4.0 * k - 1.0) / (3.0 * k) * x2 * x +
          (2.0 * k + 1.0) * km / (2.0 * k) * x2 - 2.0 * x + 2.0);
  return d;
}

ExpansionCoeffs joint_coeffs(const GmdParams& p, double x, double y) {
  ExpansionCoeffs c{};
  c.l_x = l_k(p, x);
  c.w_x = w_k(p, x);
  c.l_joint = c.l_x + l_k(p, -y);
  c.w_joint = c.w_x + w_k(p, -y);
  const auto dx = density_factor_coeffs(p, x);
  const auto dy = density_factor_coeffs(p, -y);
  c.c1 = c.l_joint + dx.d1 + dy.d1;
  c.c2 = dx.d2 + dy.d2 + dx.d1 * dy.d1 + (dx.d1 + dy.d1) * c.l_joint + c.w_joint +
         0.5 * c.l_joint * c.l_joint;
  return c;
}

double approx_max_cdf(const GmdParams& p, const Norming& nm, double x, ApproxOrder ord) {
  const double lg = log_gumbel(x);
  double value = std::exp(lg);
  if (ord == ApproxOrder::First) return value;
  const double t = nm.t();
  const double lp = l_poly(p, x);
  value += t * weighted(lp, -x + lg);
  if (ord == ApproxOrder::Second) return value;
  value += t * t * (weighted(w_poly(p, x), -x + lg) + 0.5 * weighted(lp * lp, -2.0 * x + lg));
  return value;
}

double approx_min_cdf(const GmdParams& p, const Norming& nm, double y, ApproxOrder ord) {
  // 1 - Lambda(-y) - t l(-y) Lambda(-y) - t^2 (w(-y) + l(-y)^2/2) Lambda(-y)
  const double lg = log_gumbel(-y);
  double value = -std::expm1(lg);
  if (ord == ApproxOrder::First) return value;
  const double t = nm.t();
  const double lp = l_poly(p, -y);
  value -= t * weighted(lp, y + lg);
  if (ord == ApproxOrder::Second) return value;
  value -= t * t * (weighted(w_poly(p, -y), y + lg) + 0.5 * weighted(lp * lp, 2.0 * y + lg));
  return value;
}

double approx_joint_cdf(const GmdParams& p, const Norming& nm, double x, double y,
                        ApproxOrder ord) {
  const double lgx = log_gumbel(x);
  const double both = lgx + log_gumbel(-y);  // log Lambda(x) Lambda(-y)
  double value = std::exp(lgx) * -std::expm1(log_gumbel(-y));
  if (ord == ApproxOrder::First) return value;

  const double t = nm.t();
  const double lx = l_poly(p, x);
  const double ly = l_poly(p, -y);
  // l(x) Lambda(x) - l(x, y) Lambda(x) Lambda(-y)
  value += t * (weighted(lx, -x + lgx) - weighted(lx, -x + both) - weighted(ly, y + both));
  if (ord == ApproxOrder::Second) return value;

  const double wx = w_poly(p, x);
  const double wy = w_poly(p, -y);
  const double marginal = weighted(wx, -x + lgx) + 0.5 * weighted(lx * lx, -2.0 * x + lgx);
  const double joint = weighted(wx, -x + both) + weighted(wy, y + both) +
                       0.5 * (weighted(lx * lx, -2.0 * x + both) +
                              2.0 * weighted(lx * ly, -x + y + both) +
                              weighted(ly * ly, 2.0 * y + both));
  value += t * t * (marginal - joint);
  return value;
}

double approx_joint_pdf(const GmdParams& p, const Norming& nm, double x, double y,
                        ApproxOrder ord) {
  const double base = -x + y + log_gumbel(x) + log_gumbel(-y);  // log T1
  const double t1 = std::exp(base);
  if (ord == ApproxOrder::First) return t1;

  const double t = nm.t();
  const auto dx = density_factor_coeffs(p, x);
  const auto dy = density_factor_coeffs(p, -y);
  const double lx = l_poly(p, x);
  const double ly = l_poly(p, -y);
  const double d1 = dx.d1 + dy.d1;
  // T1 * l(x, y)
  const double l_term = weighted(lx, base - x) + weighted(ly, base + y);
  const double c1_term = d1 * t1 + l_term;
  double value = t1 + t * c1_term;
  if (ord == ApproxOrder::Second) return value;

  const double w_term = weighted(w_poly(p, x), base - x) + weighted(w_poly(p, -y), base + y);
  const double l_sq_term = weighted(lx * lx, base - 2.0 * x) +
                           2.0 * weighted(lx * ly, base - x + y) +
                           weighted(ly * ly, base + 2.0 * y);
  const double c2_term =
      (dx.d2 + dy.d2 + dx.d1 * dy.d1) * t1 + d1 * l_term + w_term + 0.5 * l_sq_term;
  value += t * t * c2_term;
  return value;
}

}  // namespace expansions
}  // namespace gmdx
