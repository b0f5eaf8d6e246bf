#pragma once

// Generalized Maxwell distribution GMD(k) with scale sigma, taken on the
// whole real line: density c_k |x|^{2k} exp(-|x|^{2k} / (2 sigma^2)).
//
// The half-line tail is a regularized upper incomplete gamma function with
// shape a = 1 + 1/(2k) evaluated at |x|^{2k} / (2 sigma^2), so
//   sf(x) = Q(a, |x|^{2k} / (2 sigma^2)) / 2   for x > 0.

#include <cstdint>
#include <random>
#include <vector>

namespace gmdx {

class GmdParams {
 public:
  GmdParams(double k, double sigma);

  double k() const { return k_; }
  double sigma() const { return sigma_; }
  // Gamma shape 1 + 1/(2k).
  double a() const { return a_; }
  // log c_k = log k - (1 + 1/(2k)) log 2 - (2 + 1/k) log sigma - log Gamma(a).
  double log_norm() const { return log_norm_; }

  // |x|^{2k} / (2 sigma^2)
  double tail_arg(double x) const;

 private:
  double k_;
  double sigma_;
  double a_;
  double log_norm_;
};

// Engine plus a cached second normal deviate. Owned by the caller; one state
// per thread.
class RngState {
 public:
  explicit RngState(std::uint64_t seed) : engine_(seed) {}
  RngState(std::uint64_t seed, std::uint64_t stream);

  double uniform();  // [0, 1)
  double normal();
  // Marsaglia-Tsang squeeze, requires shape >= 1.
  double gamma(double shape);
  bool coin() { return (engine_() >> 63) != 0; }

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

namespace gmd {

double pdf(const GmdParams& p, double x);
double log_pdf(const GmdParams& p, double x);  // -inf at x = 0
double cdf(const GmdParams& p, double x);
double sf(const GmdParams& p, double x);
// log sf(x) for x > 0, finite where sf underflows.
double log_sf(const GmdParams& p, double x);
double quantile(const GmdParams& p, double q);

double sample_one(const GmdParams& p, RngState& rng);
std::vector<double> sample(const GmdParams& p, RngState& rng, std::size_t count);

/// Mills-type tail approximation of sf(x) truncated after `terms` (1..3):
///   f(x) (sigma^2/k) x^{1-2k} [1 + (sigma^2/k) x^{-2k} + ((1-2k)/k^2) sigma^4 x^{-4k}]
double mills_tail(const GmdParams& p, double x, int terms);
double log_mills_tail(const GmdParams& p, double x, int terms);

}  // namespace gmd
}  // namespace gmdx
