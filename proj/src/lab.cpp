#include "gmdx/lab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <thread>

#include "gmdx/errors.hpp"

namespace gmdx::lab {
namespace {

// Runs fn(i) for i in [0, count) on up to `threads` workers with a static
// strided assignment.
template <class Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(std::max(1u, threads), count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < count; i += workers) fn(i);
    });
  }
}

void check_increasing(std::span<const double> n_grid, const char* who) {
  for (std::size_t i = 1; i < n_grid.size(); ++i) {
    if (!(n_grid[i] > n_grid[i - 1])) {
      std::ostringstream msg;
      msg << who << ": n grid must be strictly increasing (entry " << i << ")";
      throw DomainError(msg.str());
    }
  }
}

}  // namespace

ErrorRecord error_record(const GmdParams& p, const Norming& nm, double x, double y) {
  using expansions::approx_joint_cdf;
  using expansions::approx_joint_pdf;
  ErrorRecord r{};
  r.k = p.k();
  r.sigma = p.sigma();
  r.n = nm.n;
  r.x = x;
  r.y = y;
  r.b = nm.b;
  const JointPoint pt{x, y};
  r.exact_cdf = exact::joint_cdf(p, nm, pt);
  r.s1 = approx_joint_cdf(p, nm, x, y, ApproxOrder::First);
  r.s2 = approx_joint_cdf(p, nm, x, y, ApproxOrder::Second);
  r.s3 = approx_joint_cdf(p, nm, x, y, ApproxOrder::Third);
  r.delta1 = std::abs(r.exact_cdf - r.s1);
  r.delta2 = std::abs(r.exact_cdf - r.s2);
  r.delta3 = std::abs(r.exact_cdf - r.s3);
  r.exact_pdf = exact::joint_pdf(p, nm, pt);
  r.t1 = approx_joint_pdf(p, nm, x, y, ApproxOrder::First);
  r.t2 = approx_joint_pdf(p, nm, x, y, ApproxOrder::Second);
  r.t3 = approx_joint_pdf(p, nm, x, y, ApproxOrder::Third);
  r.theta1 = std::abs(r.exact_pdf - r.t1);
  r.theta2 = std::abs(r.exact_pdf - r.t2);
  r.theta3 = std::abs(r.exact_pdf - r.t3);
  return r;
}

std::vector<ErrorRecord> error_table(const GmdParams& p, std::span<const double> n_list,
                                     std::span<const double> x_grid,
                                     std::span<const double> y_grid, unsigned threads) {
  std::vector<Norming> normings;
  normings.reserve(n_list.size());
  for (double n : n_list) normings.push_back(solve_norming(p, n));
  for (double v : x_grid)
    if (!std::isfinite(v)) throw DomainError("error_table: x grid must be finite");
  for (double v : y_grid)
    if (!std::isfinite(v)) throw DomainError("error_table: y grid must be finite");

  const std::size_t nx = x_grid.size();
  const std::size_t ny = y_grid.size();
  std::vector<ErrorRecord> out(normings.size() * nx * ny);
  parallel_for(out.size(), threads, [&](std::size_t i) {
    const std::size_t in = i / (nx * ny);
    const std::size_t ix = (i / ny) % nx;
    const std::size_t iy = i % ny;
    out[i] = error_record(p, normings[in], x_grid[ix], y_grid[iy]);
  });
  return out;
}

double richardson_extrapolate(std::span<const double> t_grid, std::span<const double> values) {
  if (t_grid.size() != values.size()) throw DomainError("richardson: size mismatch");
  if (t_grid.size() < 2) throw DomainError("richardson: need at least two points");
  for (std::size_t i = 0; i < t_grid.size(); ++i)
    for (std::size_t j = i + 1; j < t_grid.size(); ++j)
      if (t_grid[i] == t_grid[j]) throw DomainError("richardson: duplicate t value");

  // Neville's scheme evaluated at t = 0.
  std::vector<double> p(values.begin(), values.end());
  const std::size_t m = p.size();
  for (std::size_t level = 1; level < m; ++level) {
    for (std::size_t i = 0; i + level < m; ++i) {
      const double ti = t_grid[i];
      const double tj = t_grid[i + level];
      p[i] = (tj * p[i] - ti * p[i + 1]) / (tj - ti);
    }
  }
  return p[0];
}

namespace {

// Phi_n - Phi_inf plus the closed-form first and second coefficients.
struct Functional {
  double excess;
  double first;
  double second;
};

using FunctionalFn = Functional (*)(const GmdParams&, const Norming&, JointPoint);

Functional lemma42(const GmdParams& p, const Norming& nm, JointPoint pt) {
  return {exact::log_max_cdf(p, nm, pt.x) + std::exp(-pt.x), expansions::l_k(p, pt.x),
          expansions::w_k(p, pt.x)};
}

Functional lemma43(const GmdParams& p, const Norming& nm, JointPoint pt) {
  const auto c = expansions::joint_coeffs(p, pt.x, pt.y);
  return {exact::h_k(p, nm, pt), c.l_joint, c.w_joint};
}

Functional prop21(const GmdParams& p, const Norming& nm, JointPoint pt) {
  const double lam = expansions::gumbel(-pt.y);
  const double l = expansions::l_k(p, -pt.y);
  const double w = expansions::w_k(p, -pt.y);
  return {exact::min_cdf(p, nm, pt.y) - (1.0 - lam), -l * lam, -(w + 0.5 * l * l) * lam};
}

Functional thm22(const GmdParams& p, const Norming& nm, JointPoint pt) {
  const double lx = expansions::gumbel(pt.x);
  const double ly = expansions::gumbel(-pt.y);
  const auto c = expansions::joint_coeffs(p, pt.x, pt.y);
  const double limit = lx * (1.0 - ly);
  return {exact::joint_cdf(p, nm, pt) - limit,
          c.l_x * lx - c.l_joint * lx * ly,
          (c.w_x + 0.5 * c.l_x * c.l_x) * lx -
              (c.w_joint + 0.5 * c.l_joint * c.l_joint) * lx * ly};
}

// g_n / g - 1 = C1 t + C2 t^2 + ...
Functional thm23(const GmdParams& p, const Norming& nm, JointPoint pt) {
  const double log_g = -pt.x + pt.y - std::exp(-pt.x) - std::exp(pt.y);
  const auto c = expansions::joint_coeffs(p, pt.x, pt.y);
  return {std::expm1(exact::log_joint_pdf(p, nm, pt) - log_g), c.c1, c.c2};
}

// (sigma^2/k) n f(u(x)) e^x / b^{2k-1} - 1
Functional eq415(const GmdParams& p, const Norming& nm, JointPoint pt) {
  const double log_ratio =
      std::log(nm.scale) + std::log(nm.n) + gmd::log_pdf(p, u_level(nm, pt.x)) + pt.x;
  const auto d = expansions::density_factor_coeffs(p, pt.x);
  return {std::expm1(log_ratio), d.d1, d.d2};
}

// (sigma^2/k) n f(v(y)) e^{-y} / b^{2k-1} - 1
Functional eq416(const GmdParams& p, const Norming& nm, JointPoint pt) {
  const double log_ratio =
      std::log(nm.scale) + std::log(nm.n) + gmd::log_pdf(p, v_level(nm, pt.y)) - pt.y;
  const auto d = expansions::density_factor_coeffs(p, -pt.y);
  return {std::expm1(log_ratio), d.d1, d.d2};
}

struct CatalogEntry {
  const char* id;
  FunctionalFn fn;
};

constexpr CatalogEntry kCatalog[] = {
    {"lemma42", lemma42}, {"lemma43", lemma43}, {"prop21", prop21}, {"thm22", thm22},
    {"thm23", thm23},     {"eq415", eq415},     {"eq416", eq416},
};

void finish_stage(ProbeStage& s, std::span<const double> t_grid) {
  s.extrapolated = richardson_extrapolate(t_grid, s.values);
  s.abs_gap = std::abs(s.extrapolated - s.target);
}

}  // namespace

const std::vector<std::string>& probe_catalog() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> v;
    for (const auto& e : kCatalog) v.emplace_back(e.id);
    return v;
  }();
  return ids;
}

ProbeResult limit_probe(std::string_view functional_id, const GmdParams& p, JointPoint pt,
                        std::span<const double> n_grid) {
  FunctionalFn fn = nullptr;
  for (const auto& e : kCatalog)
    if (functional_id == e.id) fn = e.fn;
  if (fn == nullptr) {
    std::string known;
    for (const auto& id : probe_catalog()) known += (known.empty() ? "" : ", ") + id;
    throw UsageError("unknown probe id '" + std::string(functional_id) + "' (known: " + known +
                     ")");
  }
  if (n_grid.size() < 3) throw UsageError("limit_probe: n grid needs at least three points");
  check_increasing(n_grid, "limit_probe");

  ProbeResult r;
  r.functional_id = std::string(functional_id);
  r.k = p.k();
  r.sigma = p.sigma();
  r.x = pt.x;
  r.y = pt.y;
  r.n_grid.assign(n_grid.begin(), n_grid.end());
  for (double n : n_grid) {
    const Norming nm = solve_norming(p, n);
    const double t = nm.t();
    const Functional f = fn(p, nm, pt);
    r.t_grid.push_back(t);
    r.first.target = f.first;
    r.second.target = f.second;
    const double stage1 = f.excess / t;
    r.first.values.push_back(stage1);
    r.second.values.push_back((stage1 - f.first) / t);
  }
  finish_stage(r.first, r.t_grid);
  finish_stage(r.second, r.t_grid);
  return r;
}

double rate_fit(const GmdParams& p, JointPoint pt, ErrorSide side, ApproxOrder ord,
                std::span<const double> n_grid) {
  if (n_grid.size() < 2) throw UsageError("rate_fit: n grid needs at least two points");
  check_increasing(n_grid, "rate_fit");
  std::vector<double> lx, ly;
  std::ostringstream bad;
  for (double n : n_grid) {
    const Norming nm = solve_norming(p, n);
    const ErrorRecord r = error_record(p, nm, pt.x, pt.y);
    double err;
    if (side == ErrorSide::Cdf) {
      err = ord == ApproxOrder::First ? r.delta1 : ord == ApproxOrder::Second ? r.delta2 : r.delta3;
    } else {
      err = ord == ApproxOrder::First ? r.theta1 : ord == ApproxOrder::Second ? r.theta2 : r.theta3;
    }
    if (!(err > 0.0) || !std::isfinite(err)) {
      bad << ' ' << n;
      continue;
    }
    lx.push_back(std::log(nm.t()));
    ly.push_back(std::log(err));
  }
  if (!bad.str().empty()) throw NumericError("rate_fit: zero or non-finite error at n =" + bad.str());
  const double m = static_cast<double>(lx.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sx += lx[i];
    sy += ly[i];
  }
  const double mx = sx / m, my = sy / m;
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  return sxy / sxx;
}

McSummary mc_block_extremes(const GmdParams& p, std::int64_t n, std::int64_t reps,
                            std::uint64_t seed, std::span<const JointPoint> grid,
                            unsigned threads) {
  if (n < 3) throw UsageError("mc: block size n must be at least 3");
  if (reps < 1) throw UsageError("mc: reps must be positive");
  if (grid.empty()) throw UsageError("mc: grid must be nonempty");
  if (static_cast<double>(n) * static_cast<double>(reps) > kMcBudget) {
    std::ostringstream msg;
    msg << "mc: n*reps = " << static_cast<double>(n) * static_cast<double>(reps)
        << " exceeds the budget of 1e9 draws";
    throw UsageError(msg.str());
  }

  const Norming nm = solve_norming(p, static_cast<double>(n));
  const std::size_t g = grid.size();
  std::vector<double> u(g), v(g);
  for (std::size_t i = 0; i < g; ++i) {
    u[i] = u_level(nm, grid[i].x);
    v[i] = v_level(nm, grid[i].y);
  }

  // Fixed chunking keeps the result independent of the thread count.
  constexpr std::int64_t kChunks = 64;
  const std::int64_t chunks = std::min(kChunks, reps);
  std::vector<std::vector<std::int64_t>> joint_hits(chunks, std::vector<std::int64_t>(g, 0));
  std::vector<std::vector<std::int64_t>> max_hits(chunks, std::vector<std::int64_t>(g, 0));

  parallel_for(static_cast<std::size_t>(chunks), threads, [&](std::size_t c) {
    RngState rng(seed, c);
    const std::int64_t begin = reps * static_cast<std::int64_t>(c) / chunks;
    const std::int64_t end = reps * static_cast<std::int64_t>(c + 1) / chunks;
    for (std::int64_t r = begin; r < end; ++r) {
      double hi = -std::numeric_limits<double>::infinity();
      double lo = std::numeric_limits<double>::infinity();
      for (std::int64_t i = 0; i < n; ++i) {
        const double xi = gmd::sample_one(p, rng);
        hi = std::max(hi, xi);
        lo = std::min(lo, xi);
      }
      for (std::size_t j = 0; j < g; ++j) {
        if (hi <= u[j]) {
          ++max_hits[c][j];
          if (lo <= v[j]) ++joint_hits[c][j];
        }
      }
    }
  });

  McSummary s;
  s.n = n;
  s.reps = reps;
  s.seed = seed;
  s.grid.assign(grid.begin(), grid.end());
  const double dreps = static_cast<double>(reps);
  double worst_var = 0.0;
  for (std::size_t j = 0; j < g; ++j) {
    std::int64_t joint = 0, mx = 0;
    for (std::int64_t c = 0; c < chunks; ++c) {
      joint += joint_hits[c][j];
      mx += max_hits[c][j];
    }
    const double emp = static_cast<double>(joint) / dreps;
    const double ex = exact::joint_cdf(p, nm, grid[j]);
    s.empirical.push_back(emp);
    s.empirical_max.push_back(static_cast<double>(mx) / dreps);
    s.exact.push_back(ex);
    s.max_abs_dev = std::max(s.max_abs_dev, std::abs(emp - ex));
    worst_var = std::max(worst_var, ex * (1.0 - ex));
  }
  s.se_bound = 4.0 * std::sqrt(worst_var / dreps);
  return s;
}

}  // namespace gmdx::lab
