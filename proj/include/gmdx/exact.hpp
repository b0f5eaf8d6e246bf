#pragma once

// Exact finite-n laws of the normalized extremes, in tail/log arithmetic:
// every power F^n goes through n * log1p(-tail) with the tail computed
// directly, never as 1 - cdf.

#include "gmdx/gmd.hpp"
#include "gmdx/norming.hpp"

namespace gmdx {

struct JointPoint {
  double x;  // max coordinate
  double y;  // min coordinate
};

namespace exact {

// P(M_n <= u(x)) = F(u)^n
double max_cdf(const GmdParams& p, const Norming& nm, double x);
// n log F(u(x))
double log_max_cdf(const GmdParams& p, const Norming& nm, double x);
// P(m_n <= v(y)) = 1 - (1 - F(v))^n, with F(v) = sf(u(-y)).
double min_cdf(const GmdParams& p, const Norming& nm, double y);

// log[F(u) - F(v)]; requires u > v.
double log_inner_mass(const GmdParams& p, const Norming& nm, JointPoint pt);

// P(M_n <= u, m_n <= v) = F^n(u) - [F(u) - F(v)]^n, or F^n(u) when v >= u.
double joint_cdf(const GmdParams& p, const Norming& nm, JointPoint pt);
// Same law by the complement route P(M_n <= u) - P(M_n <= u, m_n > v),
// with the second term rebuilt from h_k.
double joint_cdf_via_complement(const GmdParams& p, const Norming& nm, JointPoint pt);

// Density g_n of the normalized pair; zero where u <= v.
double joint_pdf(const GmdParams& p, const Norming& nm, JointPoint pt);
double log_joint_pdf(const GmdParams& p, const Norming& nm, JointPoint pt);

// h_k(x, y) = n log[F(u) - F(v)] + e^{-x} + e^{y}. Throws DomainError when
// u <= v.
double h_k(const GmdParams& p, const Norming& nm, JointPoint pt);

}  // namespace exact
}  // namespace gmdx
