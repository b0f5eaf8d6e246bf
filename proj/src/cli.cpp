#include "gmdx/cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <cstring>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include "gmdx/errors.hpp"
#include "gmdx/exact.hpp"
#include "gmdx/expansions.hpp"
#include "gmdx/lab.hpp"
#include "gmdx/norming.hpp"
#include "gmdx/report.hpp"

namespace gmdx::cli {
namespace {

double parse_number(std::string_view text, std::string_view flag) {
  std::string s(text);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size() || !std::isfinite(v)) {
    throw UsageError(std::string(flag) + ": cannot parse number '" + s + "'");
  }
  return v;
}

std::string flag_error(std::string_view flag, const std::exception& e) {
  return std::string(flag) + ": " + e.what();
}

struct Common {
  double k = 1.0;
  double sigma = 1.0;
  std::string format = "csv";
  std::string out = "-";
};

GmdParams make_params(const Common& c) {
  try {
    GmdParams check_k(c.k, 1.0);
  } catch (const DomainError& e) {
    throw UsageError(flag_error("--k", e));
  }
  try {
    return GmdParams(c.k, c.sigma);
  } catch (const DomainError& e) {
    throw UsageError(flag_error("--sigma", e));
  }
}

Norming make_norming(const GmdParams& p, double n, std::string_view flag = "--n") {
  if (!(n >= kMinSampleSize && n <= kMaxSampleSize)) {
    std::ostringstream msg;
    msg << flag << ": sample size must lie in [3, 1e300], got " << n;
    throw UsageError(msg.str());
  }
  return solve_norming(p, n);
}

std::vector<double> n_list(std::string_view text, std::string_view flag) {
  auto v = parse_grid(text, flag);
  for (double n : v) {
    if (!(n >= kMinSampleSize && n <= kMaxSampleSize)) {
      std::ostringstream msg;
      msg << flag << ": sample sizes must lie in [3, 1e300], got " << n;
      throw UsageError(msg.str());
    }
  }
  return v;
}

ApproxOrder order_flag(int order) {
  try {
    return parse_order(order);
  } catch (const UsageError& e) {
    throw UsageError(flag_error("--order", e));
  }
}

// Writes via `body` to stdout or to the --out file.
template <class Body>
void emit(const std::string& path, std::ostream& out, Body&& body) {
  if (path.empty() || path == "-") {
    body(out);
    return;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  body(f);
  f.flush();
  if (!f) throw IoError("failed writing '" + path + "'");
}

void write_columns(std::ostream& os, std::span<const lab::ErrorRecord> records,
                   std::initializer_list<std::string_view> cols) {
  auto get = [](const lab::ErrorRecord& r, std::string_view c) -> double {
    if (c == "n") return r.n;
    if (c == "x") return r.x;
    if (c == "y") return r.y;
    if (c == "exact_cdf") return r.exact_cdf;
    if (c == "s1") return r.s1;
    if (c == "s2") return r.s2;
    if (c == "s3") return r.s3;
    if (c == "delta1") return r.delta1;
    if (c == "delta2") return r.delta2;
    if (c == "delta3") return r.delta3;
    if (c == "exact_pdf") return r.exact_pdf;
    if (c == "t1") return r.t1;
    if (c == "t2") return r.t2;
    if (c == "t3") return r.t3;
    if (c == "theta1") return r.theta1;
    if (c == "theta2") return r.theta2;
    return r.theta3;
  };
  bool first = true;
  for (auto c : cols) {
    os << (first ? "" : ",") << c;
    first = false;
  }
  os << '\n';
  for (const auto& r : records) {
    first = true;
    for (auto c : cols) {
      os << (first ? "" : ",") << report::number(get(r, c));
      first = false;
    }
    os << '\n';
  }
}

void write_figure_file(const std::filesystem::path& path,
                       std::span<const lab::ErrorRecord> records,
                       std::initializer_list<std::string_view> cols) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open '" + path.string() + "' for writing");
  write_columns(f, records, cols);
  f.flush();
  if (!f) throw IoError("failed writing '" + path.string() + "'");
}

struct FigureOptions {
  std::string which = "all";
  std::string dir = ".";
  std::string n_grid = "50:5000:100";
  std::string axis_grid = "-4:10:141";
};

void run_figures(const FigureOptions& o, unsigned threads, std::ostream& out) {
  const bool all = o.which == "all";
  if (!all && o.which != "1" && o.which != "2" && o.which != "3" && o.which != "4") {
    throw UsageError("--which: expected 1, 2, 3, 4 or all, got '" + o.which + "'");
  }
  const std::filesystem::path dir(o.dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory '" + o.dir + "': " + ec.message());

  const auto ns = n_list(o.n_grid, "--n-grid");
  const auto axis = parse_grid(o.axis_grid, "--grid");
  const std::initializer_list<std::string_view> pdf_vs_n = {"n", "exact_pdf", "t1", "t2", "t3"};
  std::vector<std::filesystem::path> written;

  if (all || o.which == "1") {
    const GmdParams p(1.0, 1.0);
    const double x[] = {1.0}, y[] = {0.0};
    const auto rec = lab::error_table(p, ns, x, y, threads);
    written.push_back(dir / "fig1.csv");
    write_figure_file(written.back(), rec, pdf_vs_n);
  }
  if (all || o.which == "2") {
    for (const char* ks : {"0.5", "1.0", "1.5", "6.0"}) {
      const GmdParams p(std::stod(ks), 1.0);
      const double x[] = {2.0}, y[] = {6.0};
      const auto rec = lab::error_table(p, ns, x, y, threads);
      written.push_back(dir / (std::string("fig2_k") + ks + ".csv"));
      write_figure_file(written.back(), rec, pdf_vs_n);
    }
  }
  // Panels a/b vary x at y in {2, 10}; c/d vary y at x in {2, 10}. n = 500, k = 1.
  auto panels = [&](const char* stem, std::initializer_list<std::string_view> cols) {
    const GmdParams p(1.0, 1.0);
    const double n500[] = {500.0};
    struct Panel {
      const char* tag;
      bool vary_x;
      double fixed;
    };
    for (const Panel& pn : {Panel{"a", true, 2.0}, Panel{"b", true, 10.0},
                            Panel{"c", false, 2.0}, Panel{"d", false, 10.0}}) {
      const double fixed[] = {pn.fixed};
      const auto rec = pn.vary_x ? lab::error_table(p, n500, axis, fixed, threads)
                                 : lab::error_table(p, n500, fixed, axis, threads);
      written.push_back(dir / (std::string(stem) + "_" + pn.tag + ".csv"));
      write_figure_file(written.back(), rec, cols);
    }
  };
  if (all || o.which == "3")
    panels("fig3", {"x", "y", "exact_cdf", "s1", "s2", "s3", "delta1", "delta2", "delta3"});
  if (all || o.which == "4")
    panels("fig4", {"x", "y", "exact_pdf", "t1", "t2", "t3", "theta1", "theta2", "theta3"});

  for (const auto& w : written) out << w.string() << '\n';
}

}  // namespace

std::vector<double> parse_grid(std::string_view text, std::string_view flag) {
  std::vector<double> out;
  if (text.empty()) throw UsageError(std::string(flag) + ": empty grid");
  if (text.find(':') != std::string_view::npos) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    for (;;) {
      const auto pos = text.find(':', start);
      parts.push_back(text.substr(start, pos - start));
      if (pos == std::string_view::npos) break;
      start = pos + 1;
    }
    if (parts.size() != 3) {
      throw UsageError(std::string(flag) + ": grid must be start:stop:count, got '" +
                       std::string(text) + "'");
    }
    const double a = parse_number(parts[0], flag);
    const double b = parse_number(parts[1], flag);
    const double c = parse_number(parts[2], flag);
    if (c < 1 || c != std::floor(c) || c > 1e7) {
      throw UsageError(std::string(flag) + ": grid count must be a positive integer");
    }
    const auto count = static_cast<std::size_t>(c);
    if (count == 1) {
      if (a != b) throw UsageError(std::string(flag) + ": a one-point grid needs start == stop");
      return {a};
    }
    for (std::size_t i = 0; i < count; ++i) {
      const double frac = static_cast<double>(i) / static_cast<double>(count - 1);
      out.push_back(i + 1 == count ? b : a + (b - a) * frac);
    }
    return out;
  }
  std::size_t start = 0;
  for (;;) {
    const auto pos = text.find(',', start);
    out.push_back(parse_number(text.substr(start, pos - start), flag));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

unsigned thread_cap() {
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const char* env = std::getenv("GMD_EXTREMES_THREADS");
  if (env == nullptr || *env == '\0') return hw;
  unsigned v = 0;
  const char* end = env + std::strlen(env);
  const auto [ptr, ec] = std::from_chars(env, end, v);
  if (ec != std::errc() || ptr != end || v == 0) {
    throw UsageError(std::string("GMD_EXTREMES_THREADS: expected a positive integer, got '") +
                     env + "'");
  }
  return v;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Generalized Maxwell extremes: exact laws, asymptotic expansions, checks",
               "gmd-extremes"};
  app.fallthrough();
  app.require_subcommand(1);
  app.set_config("--config", "", "TOML/INI config file; command-line flags take precedence");

  Common common;
  app.add_option("--k", common.k, "shape k > 0")->capture_default_str();
  app.add_option("--sigma", common.sigma, "scale sigma > 0")->capture_default_str();
  app.add_option("--format", common.format, "csv or json")->capture_default_str();
  app.add_option("--out", common.out, "output file, '-' for stdout")->capture_default_str();

  double n = 500.0, x = 0.0, y = 0.0, q = 0.5;
  int order = 1, terms = 3;
  std::string kind;

  auto* dist = app.add_subcommand("dist", "distribution functions: pdf cdf sf quantile mills");
  dist->add_option("kind", kind, "pdf | cdf | sf | quantile | mills")->required();
  dist->add_option("--x", x, "argument");
  dist->add_option("--q", q, "probability for quantile");
  dist->add_option("--terms", terms, "Mills expansion terms (1-3)")->capture_default_str();

  auto* norm = app.add_subcommand("norming", "solve 1 - F(b_n) = 1/n");
  norm->add_option("--n", n, "sample size (real, >= 3)")->capture_default_str();

  auto* approx = app.add_subcommand("approx", "order-1/2/3 approximants");
  approx->add_option("kind", kind, "max | min | cdf | pdf")->required();
  approx->add_option("--n", n, "sample size")->capture_default_str();
  approx->add_option("--x", x, "max coordinate");
  approx->add_option("--y", y, "min coordinate");
  approx->add_option("--order", order, "1, 2 or 3")->capture_default_str();

  auto* ex = app.add_subcommand("exact", "exact finite-n laws");
  ex->add_option("kind", kind, "max | min | cdf | pdf | h")->required();
  ex->add_option("--n", n, "sample size")->capture_default_str();
  ex->add_option("--x", x, "max coordinate");
  ex->add_option("--y", y, "min coordinate");

  std::string n_grid_text = "500", x_grid_text = "0", y_grid_text = "0";
  auto* errs = app.add_subcommand("errors", "error table of S_i and T_i");
  errs->add_option("--n-grid", n_grid_text, "sample sizes")->capture_default_str();
  errs->add_option("--x-grid", x_grid_text, "x values")->capture_default_str();
  errs->add_option("--y-grid", y_grid_text, "y values")->capture_default_str();

  std::string probe_id;
  std::string probe_grid_text = "1e6,1e12,1e24";
  auto* probe = app.add_subcommand("probe", "limit probe with Richardson extrapolation");
  probe->add_option("--id", probe_id, "lemma42 lemma43 prop21 thm22 thm23 eq415 eq416")->required();
  probe->add_option("--x", x, "max coordinate");
  probe->add_option("--y", y, "min coordinate");
  probe->add_option("--n-grid", probe_grid_text, "sample sizes")->capture_default_str();

  std::string side = "cdf";
  std::string rate_grid_text = "1e6,1e9,1e12,1e15,1e18,1e21,1e24";
  auto* rates = app.add_subcommand("rates", "fitted convergence slope of an error");
  rates->add_option("--side", side, "cdf (Delta) or pdf (Theta)")->capture_default_str();
  rates->add_option("--order", order, "1, 2 or 3")->capture_default_str();
  rates->add_option("--x", x, "max coordinate");
  rates->add_option("--y", y, "min coordinate");
  rates->add_option("--n-grid", rate_grid_text, "sample sizes")->capture_default_str();

  std::int64_t block = 100, reps = 100000;
  std::uint64_t seed = 20200101;
  std::string mc_x = "-1,0,1", mc_y = "-1,0,1";
  auto* mc = app.add_subcommand("mc", "Monte Carlo block extremes vs exact law");
  mc->add_option("--n", block, "block size (integer >= 3)")->capture_default_str();
  mc->add_option("--reps", reps, "replications")->capture_default_str();
  mc->add_option("--seed", seed, "seed")->capture_default_str();
  mc->add_option("--x-grid", mc_x, "x values")->capture_default_str();
  mc->add_option("--y-grid", mc_y, "y values")->capture_default_str();

  FigureOptions fig;
  auto* figures = app.add_subcommand("figures", "emit figure datasets as CSV");
  figures->add_option("--which", fig.which, "1, 2, 3, 4 or all")->capture_default_str();
  figures->add_option("--dir", fig.dir, "output directory (also via --out)");
  figures->add_option("--n-grid", fig.n_grid, "n grid for figures 1-2")->capture_default_str();
  figures->add_option("--grid", fig.axis_grid, "axis grid for figures 3-4")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    const auto format = [&] {
      try {
        return report::parse_format(common.format);
      } catch (const UsageError& e) {
        throw UsageError(flag_error("--format", e));
      }
    }();
    const GmdParams p = make_params(common);
    auto print = [&](double v) {
      emit(common.out, out, [&](std::ostream& os) { os << report::number(v) << '\n'; });
    };

    if (dist->parsed()) {
      if (kind == "pdf") {
        print(gmd::pdf(p, x));
      } else if (kind == "cdf") {
        print(gmd::cdf(p, x));
      } else if (kind == "sf") {
        print(gmd::sf(p, x));
      } else if (kind == "quantile") {
        if (!(q > 0.0 && q < 1.0)) throw UsageError("--q: probability must lie in (0,1)");
        print(gmd::quantile(p, q));
      } else if (kind == "mills") {
        if (!(x > 0.0)) throw UsageError("--x: Mills tail needs x > 0");
        if (terms < 1 || terms > 3) throw UsageError("--terms: must be 1, 2 or 3");
        print(gmd::mills_tail(p, x, terms));
      } else {
        throw UsageError("dist: unknown kind '" + kind + "'");
      }
    } else if (norm->parsed()) {
      const Norming nm = make_norming(p, n);
      emit(common.out, out, [&](std::ostream& os) {
        using report::number;
        if (format == report::Format::Csv) {
          os << "n,b,b_pow_2k,tail_arg\n"
             << number(nm.n) << ',' << number(nm.b) << ',' << number(nm.b_pow_2k) << ','
             << number(nm.tail_arg) << '\n';
        } else {
          os << "{\"n\": " << number(nm.n) << ", \"b\": " << number(nm.b)
             << ", \"b_pow_2k\": " << number(nm.b_pow_2k)
             << ", \"tail_arg\": " << number(nm.tail_arg) << "}\n";
        }
      });
    } else if (approx->parsed()) {
      const Norming nm = make_norming(p, n);
      const ApproxOrder ord = order_flag(order);
      if (kind == "max") {
        print(expansions::approx_max_cdf(p, nm, x, ord));
      } else if (kind == "min") {
        print(expansions::approx_min_cdf(p, nm, y, ord));
      } else if (kind == "cdf") {
        print(expansions::approx_joint_cdf(p, nm, x, y, ord));
      } else if (kind == "pdf") {
        print(expansions::approx_joint_pdf(p, nm, x, y, ord));
      } else {
        throw UsageError("approx: unknown kind '" + kind + "'");
      }
    } else if (ex->parsed()) {
      const Norming nm = make_norming(p, n);
      if (kind == "max") {
        print(exact::max_cdf(p, nm, x));
      } else if (kind == "min") {
        print(exact::min_cdf(p, nm, y));
      } else if (kind == "cdf") {
        print(exact::joint_cdf(p, nm, {x, y}));
      } else if (kind == "pdf") {
        print(exact::joint_pdf(p, nm, {x, y}));
      } else if (kind == "h") {
        if (!(u_level(nm, x) > v_level(nm, y))) {
          throw UsageError("--x/--y: h_k needs u(x) > v(y)");
        }
        print(exact::h_k(p, nm, {x, y}));
      } else {
        throw UsageError("exact: unknown kind '" + kind + "'");
      }
    } else if (errs->parsed()) {
      const auto ns = n_list(n_grid_text, "--n-grid");
      const auto xs = parse_grid(x_grid_text, "--x-grid");
      const auto ys = parse_grid(y_grid_text, "--y-grid");
      const auto records = lab::error_table(p, ns, xs, ys, thread_cap());
      if (common.out.empty() || common.out == "-") {
        report::write_records(out, records, format);
      } else {
        report::write_report(records, format, common.out);
      }
    } else if (probe->parsed()) {
      const auto ns = n_list(probe_grid_text, "--n-grid");
      const auto r = lab::limit_probe(probe_id, p, {x, y}, ns);
      emit(common.out, out, [&](std::ostream& os) { report::write_probe(os, r); });
    } else if (rates->parsed()) {
      lab::ErrorSide s;
      if (side == "cdf") {
        s = lab::ErrorSide::Cdf;
      } else if (side == "pdf") {
        s = lab::ErrorSide::Pdf;
      } else {
        throw UsageError("--side: expected cdf or pdf, got '" + side + "'");
      }
      const auto ns = n_list(rate_grid_text, "--n-grid");
      print(lab::rate_fit(p, {x, y}, s, order_flag(order), ns));
    } else if (mc->parsed()) {
      if (block < 3) throw UsageError("--n: block size must be at least 3");
      if (reps < 1) throw UsageError("--reps: must be positive");
      const auto xs = parse_grid(mc_x, "--x-grid");
      const auto ys = parse_grid(mc_y, "--y-grid");
      std::vector<JointPoint> grid;
      for (double gx : xs)
        for (double gy : ys) grid.push_back({gx, gy});
      const auto s = lab::mc_block_extremes(p, block, reps, seed, grid, thread_cap());
      emit(common.out, out, [&](std::ostream& os) { report::write_mc(os, s, format); });
    } else if (figures->parsed()) {
      if (fig.dir.empty() || fig.dir == ".") {
        if (!common.out.empty() && common.out != "-") fig.dir = common.out;
      }
      run_figures(fig, thread_cap(), out);
    }
    return kExitOk;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NumericError& e) {
    err << "numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << '\n';
    return kExitNumeric;
  }
}

}  // namespace gmdx::cli
