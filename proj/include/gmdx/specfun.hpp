#pragma once

// Special-function kernel: log-gamma, regularized incomplete gamma
// functions and their inverse, complementary error function.
//
// Tail quantities carry relative accuracy contracts so that products like
// n * Q(a, t) with n ~ 1e300 stay exact to ~1e-12.

namespace gmdx::specfun {

struct RegGammaArgs {
  double a;  // shape, > 0
  double t;  // argument, >= 0
};

/// log Gamma(z) for z > 0. Throws DomainError otherwise.
double ln_gamma(double z);

/// P(a, t) = gamma(a, t) / Gamma(a).
double reg_gamma_p(RegGammaArgs args);

/// Q(a, t) = 1 - P(a, t), relative accuracy even when Q underflows toward
/// 1e-300. Continued fraction for t >= a + 1.
double reg_gamma_q(RegGammaArgs args);

/// log Q(a, t). Finite for all valid args, including the range where Q
/// itself underflows.
double log_reg_gamma_q(RegGammaArgs args);

/// Solves Q(a, t) = q for t. Requires 0 < q < 1.
double inv_reg_gamma_q(double a, double q);

double erfc(double x);

}  // namespace gmdx::specfun
