#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>

#include "gmdx/lab.hpp"

namespace gmdx::report {

enum class Format { Csv, Json };

Format parse_format(std::string_view name);

// 17 significant digits, "%.17g".
std::string number(double v);

inline constexpr std::string_view kErrorColumns[] = {
    "k",      "sigma",  "n",         "x",  "y",  "b",      "exact_cdf",
    "s1",     "s2",     "s3",        "delta1", "delta2", "delta3",
    "exact_pdf", "t1", "t2",         "t3", "theta1", "theta2", "theta3"};

void write_records(std::ostream& os, std::span<const lab::ErrorRecord> records, Format format);

// Throws UsageError on an empty record list, IoError when the file cannot be
// written.
void write_report(std::span<const lab::ErrorRecord> records, Format format,
                  const std::filesystem::path& path);

void write_probe(std::ostream& os, const lab::ProbeResult& r);
void write_mc(std::ostream& os, const lab::McSummary& s, Format format);

}  // namespace gmdx::report
