#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "gmdx/errors.hpp"
#include "gmdx/report.hpp"

namespace {

using namespace gmdx;
namespace fs = std::filesystem;

std::vector<lab::ErrorRecord> sample_records() {
  const GmdParams p(1.0, 1.0);
  const std::vector<double> ns{50, 500};
  const std::vector<double> xs{1.0};
  const std::vector<double> ys{0.0, 6.0};
  return lab::error_table(p, ns, xs, ys);
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

TEST(Number, SeventeenDigits) {
  EXPECT_EQ(report::number(0.1), "0.10000000000000001");
  EXPECT_EQ(report::number(2.0), "2");
  EXPECT_EQ(report::number(1e-300), "1e-300");
  EXPECT_EQ(report::number(1.0 / 3.0), "0.33333333333333331");
  EXPECT_EQ(std::stod(report::number(0.87641541397387945)), 0.87641541397387945);
}

TEST(ParseFormat, Values) {
  EXPECT_EQ(report::parse_format("csv"), report::Format::Csv);
  EXPECT_EQ(report::parse_format("json"), report::Format::Json);
  EXPECT_THROW(report::parse_format("xml"), UsageError);
}

TEST(WriteRecords, CsvHeaderOrder) {
  std::ostringstream os;
  report::write_records(os, sample_records(), report::Format::Csv);
  const std::string text = os.str();
  const std::string header = text.substr(0, text.find('\n'));
  EXPECT_EQ(header,
            "k,sigma,n,x,y,b,exact_cdf,s1,s2,s3,delta1,delta2,delta3,exact_pdf,t1,t2,t3,theta1,"
            "theta2,theta3");
  EXPECT_EQ(text.back(), '\n');
  std::size_t lines = 0;
  for (char c : text) lines += c == '\n';
  EXPECT_EQ(lines, 5u);
}

TEST(WriteRecords, CsvRowsRoundTrip) {
  const auto recs = sample_records();
  std::ostringstream os;
  report::write_records(os, recs, report::Format::Csv);
  std::istringstream in(os.str());
  std::string line;
  std::getline(in, line);
  std::getline(in, line);
  std::vector<double> cells;
  std::istringstream row(line);
  for (std::string cell; std::getline(row, cell, ',');) cells.push_back(std::stod(cell));
  ASSERT_EQ(cells.size(), 20u);
  EXPECT_EQ(cells[2], recs[0].n);
  EXPECT_EQ(cells[6], recs[0].exact_cdf);
  EXPECT_EQ(cells[19], recs[0].theta3);
}

TEST(WriteRecords, JsonKeys) {
  const auto recs = sample_records();
  std::ostringstream os;
  report::write_records(os, recs, report::Format::Json);
  const auto doc = nlohmann::json::parse(os.str());
  ASSERT_TRUE(doc.is_array());
  ASSERT_EQ(doc.size(), recs.size());
  std::vector<std::string> keys;
  for (auto it = doc[0].begin(); it != doc[0].end(); ++it) keys.push_back(it.key());
  std::vector<std::string> expected(std::begin(report::kErrorColumns),
                                    std::end(report::kErrorColumns));
  std::sort(keys.begin(), keys.end());
  std::sort(expected.begin(), expected.end());
  EXPECT_EQ(keys, expected);
  EXPECT_EQ(doc[3]["delta2"].get<double>(), recs[3].delta2);
}

TEST(WriteReport, ByteStable) {
  const fs::path dir = fs::temp_directory_path() / "gmdx_report_test";
  fs::create_directories(dir);
  for (auto fmt : {report::Format::Csv, report::Format::Json}) {
    report::write_report(sample_records(), fmt, dir / "a.out");
    report::write_report(sample_records(), fmt, dir / "b.out");
    const std::string a = slurp(dir / "a.out");
    EXPECT_FALSE(a.empty());
    EXPECT_EQ(a, slurp(dir / "b.out"));
  }
  fs::remove_all(dir);
}

TEST(WriteReport, Errors) {
  const std::vector<lab::ErrorRecord> none;
  EXPECT_THROW(report::write_report(none, report::Format::Csv, "unused.csv"), UsageError);
  EXPECT_THROW(report::write_report(sample_records(), report::Format::Csv,
                                    "/nonexistent-dir/sub/out.csv"),
               IoError);
}

TEST(WriteProbe, ParsesAsJson) {
  const auto r = lab::limit_probe("thm23", GmdParams(1.0, 1.0), {0.0, 0.0}, lab::kDefaultProbeGrid);
  std::ostringstream os;
  report::write_probe(os, r);
  const auto doc = nlohmann::json::parse(os.str());
  EXPECT_EQ(doc["functional_id"], "thm23");
  EXPECT_EQ(doc["first"]["target"].get<double>(), -2.0);
  EXPECT_EQ(doc["second"]["abs_gap"].get<double>(), r.second.abs_gap);
  EXPECT_EQ(doc["t_grid"].size(), 3u);
}

TEST(WriteMc, CsvAndJson) {
  const std::vector<JointPoint> grid{{0, 0}, {1, -1}};
  const auto s = lab::mc_block_extremes(GmdParams(1.0, 1.0), 10, 200, 5, grid);
  std::ostringstream csv, js;
  report::write_mc(csv, s, report::Format::Csv);
  report::write_mc(js, s, report::Format::Json);
  EXPECT_EQ(csv.str().substr(0, csv.str().find('\n')), "x,y,empirical,empirical_max,exact,abs_dev");
  const auto doc = nlohmann::json::parse(js.str());
  EXPECT_EQ(doc["reps"].get<int>(), 200);
}

}  // namespace
