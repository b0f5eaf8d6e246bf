#include "gmdx/gmd.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "gmdx/errors.hpp"
#include "gmdx/specfun.hpp"

namespace gmdx {

GmdParams::GmdParams(double k, double sigma) : k_(k), sigma_(sigma) {
  if (!(std::isfinite(k) && k > 0.0)) {
    std::ostringstream msg;
    msg << "shape k must be positive and finite, got " << k;
    throw DomainError(msg.str());
  }
  if (!(std::isfinite(sigma) && sigma > 0.0)) {
    std::ostringstream msg;
    msg << "scale sigma must be positive and finite, got " << sigma;
    throw DomainError(msg.str());
  }
  a_ = 1.0 + 1.0 / (2.0 * k_);
  log_norm_ = std::log(k_) - a_ * std::numbers::ln2 - (2.0 + 1.0 / k_) * std::log(sigma_) -
              specfun::ln_gamma(a_);
}

double GmdParams::tail_arg(double x) const {
  return std::pow(std::abs(x), 2.0 * k_) / (2.0 * sigma_ * sigma_);
}

RngState::RngState(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  engine_.seed(seq);
}

double RngState::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RngState::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  // Marsaglia polar method.
  double u, v, s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double m = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * m;
  has_spare_ = true;
  return u * m;
}

double RngState::gamma(double shape) {
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double z, v;
    do {
      z = normal();
      v = 1.0 + c * z;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform();
    const double z2 = z * z;
    if (u < 1.0 - 0.0331 * z2 * z2) return d * v;
    if (u > 0.0 && std::log(u) < 0.5 * z2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

namespace gmd {

double log_pdf(const GmdParams& p, double x) {
  if (x == 0.0) return -std::numeric_limits<double>::infinity();
  const double ax = std::abs(x);
  return p.log_norm() + 2.0 * p.k() * std::log(ax) - p.tail_arg(ax);
}

double pdf(const GmdParams& p, double x) {
  if (x == 0.0) return 0.0;
  return std::exp(log_pdf(p, x));
}

namespace {
// P(X > |x|), the shared kernel of cdf and sf.
double upper_half_tail(const GmdParams& p, double x) {
  return 0.5 * specfun::reg_gamma_q({p.a(), p.tail_arg(x)});
}
}  // namespace

double cdf(const GmdParams& p, double x) {
  const double h = upper_half_tail(p, x);
  return x < 0.0 ? h : 1.0 - h;
}

double sf(const GmdParams& p, double x) {
  const double h = upper_half_tail(p, x);
  return x > 0.0 ? h : 1.0 - h;
}

double log_sf(const GmdParams& p, double x) {
  if (x <= 0.0) return std::log(sf(p, x));
  return -std::numbers::ln2 + specfun::log_reg_gamma_q({p.a(), p.tail_arg(x)});
}

double quantile(const GmdParams& p, double q) {
  if (!(q > 0.0 && q < 1.0)) {
    std::ostringstream msg;
    msg << "quantile: probability must lie in (0,1), got " << q;
    throw DomainError(msg.str());
  }
  if (q == 0.5) return 0.0;
  // Solve on the tail nearer q; 1 - q is exact for q > 1/2.
  const double tail = q > 0.5 ? 1.0 - q : q;
  const double t = specfun::inv_reg_gamma_q(p.a(), 2.0 * tail);
  const double x = std::pow(2.0 * p.sigma() * p.sigma() * t, 1.0 / (2.0 * p.k()));
  return q > 0.5 ? x : -x;
}

double sample_one(const GmdParams& p, RngState& rng) {
  const double g = rng.gamma(p.a());
  const double mag = std::pow(2.0 * p.sigma() * p.sigma() * g, 1.0 / (2.0 * p.k()));
  return rng.coin() ? mag : -mag;
}

std::vector<double> sample(const GmdParams& p, RngState& rng, std::size_t count) {
  if (count == 0) throw UsageError("sample: count must be positive");
  std::vector<double> out(count);
  for (auto& v : out) v = sample_one(p, rng);
  return out;
}

double log_mills_tail(const GmdParams& p, double x, int terms) {
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("mills_tail: x must be positive");
  if (terms < 1 || terms > 3) throw DomainError("mills_tail: terms must be 1, 2 or 3");
  const double k = p.k();
  const double s2 = p.sigma() * p.sigma();
  const double inv = std::pow(x, -2.0 * k);
  double series = 1.0;
  if (terms >= 2) series += s2 / k * inv;
  if (terms >= 3) series += (1.0 - 2.0 * k) / (k * k) * s2 * s2 * inv * inv;
  return log_pdf(p, x) + std::log(s2 / k) + (1.0 - 2.0 * k) * std::log(x) + std::log(series);
}

double mills_tail(const GmdParams& p, double x, int terms) {
  return std::exp(log_mills_tail(p, x, terms));
}

}  // namespace gmd
}  // namespace gmdx
