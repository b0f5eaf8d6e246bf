#pragma once

// Closed-form asymptotics of the normalized extremes (M_n, m_n) in powers of
// t = b_n^{-2k}: Gumbel limit, the correction coefficients l_k and w_k, the
// joint coefficients C1 and C2 of the density expansion, and the order-1/2/3
// approximants.

#include "gmdx/gmd.hpp"
#include "gmdx/norming.hpp"

namespace gmdx {

enum class ApproxOrder { First = 1, Second = 2, Third = 3 };

// Parses 1/2/3 or first/second/third; throws UsageError otherwise.
ApproxOrder parse_order(int order);

struct ExpansionCoeffs {
  double l_x;
  double w_x;
  double l_joint;  // l_k(x) + l_k(-y)
  double w_joint;  // w_k(x) + w_k(-y)
  double c1;
  double c2;
};

// First- and second-order coefficients of
//   (sigma^2/k) n f(u(x)) e^x / b^{2k-1} = 1 + d1 t + d2 t^2 + O(t^3).
// The minimum side at y uses (d1, d2)(-y).
struct DensityFactorCoeffs {
  double d1;
  double d2;
};

namespace expansions {

double gumbel(double x);

// Polynomial parts: l_k(x) = l_poly(x) e^{-x}, w_k(x) = w_poly(x) e^{-x}.
double l_poly(const GmdParams& p, double x);
double w_poly(const GmdParams& p, double x);

// sigma^2/(2k) [(2k-1) x^2 - 2x] e^{-x}
double l_k(const GmdParams& p, double x);
// -sigma^4/(24k^2) [3(2k-1)^2 x^4 - 4(2k+1)(2k-1) x^3 - 48k x] e^{-x}
double w_k(const GmdParams& p, double x);

DensityFactorCoeffs density_factor_coeffs(const GmdParams& p, double x);

ExpansionCoeffs joint_coeffs(const GmdParams& p, double x, double y);

// Approximants. Returned unclamped; they may leave [0, 1] at small n.
double approx_max_cdf(const GmdParams& p, const Norming& nm, double x, ApproxOrder ord);
double approx_min_cdf(const GmdParams& p, const Norming& nm, double y, ApproxOrder ord);
double approx_joint_cdf(const GmdParams& p, const Norming& nm, double x, double y,
                        ApproxOrder ord);
double approx_joint_pdf(const GmdParams& p, const Norming& nm, double x, double y,
                        ApproxOrder ord);

}  // namespace expansions
}  // namespace gmdx
