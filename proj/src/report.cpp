#include "gmdx/report.hpp"

#include <array>
#include <cstdio>
#include <fstream>
#include <ostream>

#include "gmdx/errors.hpp"

namespace gmdx::report {
namespace {

std::array<double, 20> fields(const lab::ErrorRecord& r) {
  return {r.k,      r.sigma,  r.n,      r.x,         r.y,  r.b,  r.exact_cdf,
          r.s1,     r.s2,     r.s3,     r.delta1,    r.delta2, r.delta3,
          r.exact_pdf, r.t1, r.t2,     r.t3,        r.theta1, r.theta2, r.theta3};
}

void write_array(std::ostream& os, std::span<const double> values) {
  os << '[';
  for (std::size_t i = 0; i < values.size(); ++i) os << (i ? ", " : "") << number(values[i]);
  os << ']';
}

}  // namespace

Format parse_format(std::string_view name) {
  if (name == "csv") return Format::Csv;
  if (name == "json") return Format::Json;
  throw UsageError("format must be csv or json, got '" + std::string(name) + "'");
}

std::string number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_records(std::ostream& os, std::span<const lab::ErrorRecord> records, Format format) {
  if (format == Format::Csv) {
    for (std::size_t i = 0; i < std::size(kErrorColumns); ++i)
      os << (i ? "," : "") << kErrorColumns[i];
    os << '\n';
    for (const auto& r : records) {
      const auto f = fields(r);
      for (std::size_t i = 0; i < f.size(); ++i) os << (i ? "," : "") << number(f[i]);
      os << '\n';
    }
    return;
  }
  os << "[\n";
  for (std::size_t j = 0; j < records.size(); ++j) {
    const auto f = fields(records[j]);
    os << "  {";
    for (std::size_t i = 0; i < f.size(); ++i)
      os << (i ? ", " : "") << '"' << kErrorColumns[i] << "\": " << number(f[i]);
    os << '}' << (j + 1 < records.size() ? "," : "") << '\n';
  }
  os << "]\n";
}

void write_report(std::span<const lab::ErrorRecord> records, Format format,
                  const std::filesystem::path& path) {
  if (records.empty()) throw UsageError("write_report: no records to write");
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  write_records(out, records, format);
  out.flush();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

void write_probe(std::ostream& os, const lab::ProbeResult& r) {
  auto stage = [&](const char* name, const lab::ProbeStage& s) {
    os << "  \"" << name << "\": {\"values\": ";
    write_array(os, s.values);
    os << ", \"extrapolated\": " << number(s.extrapolated) << ", \"target\": " << number(s.target)
       << ", \"abs_gap\": " << number(s.abs_gap) << '}';
  };
  os << "{\n  \"functional_id\": \"" << r.functional_id << "\",\n"
     << "  \"params\": {\"k\": " << number(r.k) << ", \"sigma\": " << number(r.sigma)
     << ", \"x\": " << number(r.x) << ", \"y\": " << number(r.y) << "},\n"
     << "  \"n_grid\": ";
  write_array(os, r.n_grid);
  os << ",\n  \"t_grid\": ";
  write_array(os, r.t_grid);
  os << ",\n";
  stage("first", r.first);
  os << ",\n";
  stage("second", r.second);
  os << "\n}\n";
}

void write_mc(std::ostream& os, const lab::McSummary& s, Format format) {
  if (format == Format::Csv) {
    os << "x,y,empirical,empirical_max,exact,abs_dev\n";
    for (std::size_t i = 0; i < s.grid.size(); ++i) {
      os << number(s.grid[i].x) << ',' << number(s.grid[i].y) << ',' << number(s.empirical[i])
         << ',' << number(s.empirical_max[i]) << ',' << number(s.exact[i]) << ','
         << number(std::abs(s.empirical[i] - s.exact[i])) << '\n';
    }
    return;
  }
  std::vector<double> xs, ys;
  for (const auto& pt : s.grid) {
    xs.push_back(pt.x);
    ys.push_back(pt.y);
  }
  os << "{\n  \"n\": " << s.n << ",\n  \"reps\": " << s.reps << ",\n  \"seed\": " << s.seed
     << ",\n  \"x\": ";
  write_array(os, xs);
  os << ",\n  \"y\": ";
  write_array(os, ys);
  os << ",\n  \"empirical\": ";
  write_array(os, s.empirical);
  os << ",\n  \"empirical_max\": ";
  write_array(os, s.empirical_max);
  os << ",\n  \"exact\": ";
  write_array(os, s.exact);
  os << ",\n  \"max_abs_dev\": " << number(s.max_abs_dev)
     << ",\n  \"se_bound\": " << number(s.se_bound) << "\n}\n";
}

}  // namespace gmdx::report
