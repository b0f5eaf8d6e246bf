#pragma once

// Experimental engine: error tables of the approximants, limit probes with
// Richardson extrapolation in t = b_n^{-2k}, convergence-rate fits and Monte
// Carlo block extremes.

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gmdx/exact.hpp"
#include "gmdx/expansions.hpp"
#include "gmdx/gmd.hpp"

namespace gmdx::lab {

struct ErrorRecord {
  double k, sigma, n, x, y, b;
  double exact_cdf, s1, s2, s3, delta1, delta2, delta3;
  double exact_pdf, t1, t2, t3, theta1, theta2, theta3;
};

ErrorRecord error_record(const GmdParams& p, const Norming& nm, double x, double y);

// One record per (n, x, y), n outermost. Deterministic for any thread count.
std::vector<ErrorRecord> error_table(const GmdParams& p, std::span<const double> n_list,
                                     std::span<const double> x_grid,
                                     std::span<const double> y_grid, unsigned threads = 1);

/// Value at t = 0 of the polynomial interpolating (t_i, values_i): linear
/// for two points, quadratic for three. Throws DomainError on duplicate t.
double richardson_extrapolate(std::span<const double> t_grid, std::span<const double> values);

struct ProbeStage {
  std::vector<double> values;
  double extrapolated = 0.0;
  double target = 0.0;
  double abs_gap = 0.0;
};

// A limit functional Phi_n = Phi_inf + A t + B t^2 + ... probed on an n grid.
// Stage one extrapolates (Phi_n - Phi_inf)/t toward A, stage two
// extrapolates ((Phi_n - Phi_inf)/t - A)/t toward B. Phi_n comes from the
// exact laws only; A and B come from the expansions.
struct ProbeResult {
  std::string functional_id;
  double k, sigma, x, y;
  std::vector<double> n_grid;
  std::vector<double> t_grid;
  ProbeStage first;
  ProbeStage second;
};

// lemma42, lemma43, prop21, thm22, thm23, eq415, eq416
const std::vector<std::string>& probe_catalog();

ProbeResult limit_probe(std::string_view functional_id, const GmdParams& p, JointPoint pt,
                        std::span<const double> n_grid);

inline const std::vector<double> kDefaultProbeGrid{1e6, 1e12, 1e24};

enum class ErrorSide { Cdf, Pdf };

// Least-squares slope of log(error) against log(b_n^{-2k}).
double rate_fit(const GmdParams& p, JointPoint pt, ErrorSide side, ApproxOrder ord,
                std::span<const double> n_grid);

struct McSummary {
  std::int64_t n = 0;
  std::int64_t reps = 0;
  std::uint64_t seed = 0;
  std::vector<JointPoint> grid;
  std::vector<double> empirical;      // P(M_n <= u, m_n <= v)
  std::vector<double> empirical_max;  // P(M_n <= u)
  std::vector<double> exact;
  double max_abs_dev = 0.0;
  double se_bound = 0.0;  // 4 max sqrt(p(1-p)/reps)
};

inline constexpr double kMcBudget = 1e9;

McSummary mc_block_extremes(const GmdParams& p, std::int64_t n, std::int64_t reps,
                            std::uint64_t seed, std::span<const JointPoint> grid,
                            unsigned threads = 1);

}  // namespace gmdx::lab
