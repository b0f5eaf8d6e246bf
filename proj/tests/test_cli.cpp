#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "gmdx/cli.hpp"
#include "gmdx/errors.hpp"
#include "gmdx/exact.hpp"

namespace {

using namespace gmdx;
namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "gmd-extremes");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("gmdx_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

TEST(ParseGrid, Forms) {
  EXPECT_EQ(cli::parse_grid("0:1:3", "--g"), (std::vector<double>{0.0, 0.5, 1.0}));
  EXPECT_EQ(cli::parse_grid("1,2.5,1e6", "--g"), (std::vector<double>{1.0, 2.5, 1e6}));
  EXPECT_EQ(cli::parse_grid("7", "--g"), (std::vector<double>{7.0}));
  const auto g = cli::parse_grid("-4:10:141", "--g");
  ASSERT_EQ(g.size(), 141u);
  EXPECT_EQ(g.front(), -4.0);
  EXPECT_EQ(g.back(), 10.0);
  EXPECT_NEAR(g[40], 0.0, 1e-15);
}

TEST(ParseGrid, ErrorsNameTheFlag) {
  for (const char* bad : {"", "1:2", "a,b", "0:1:0", "1,,2"}) {
    try {
      cli::parse_grid(bad, "--x-grid");
      ADD_FAILURE() << bad;
    } catch (const UsageError& e) {
      EXPECT_NE(std::string(e.what()).find("--x-grid"), std::string::npos) << bad;
    }
  }
}

TEST(ThreadCap, Environment) {
  setenv("GMD_EXTREMES_THREADS", "3", 1);
  EXPECT_EQ(cli::thread_cap(), 3u);
  unsetenv("GMD_EXTREMES_THREADS");
  EXPECT_GE(cli::thread_cap(), 1u);
}

TEST(Cli, ExactCdfExample) {
  const auto r = run({"exact", "cdf", "--k", "1", "--sigma", "1", "--n", "500", "--x", "2", "--y", "6"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const GmdParams p(1.0, 1.0);
  EXPECT_EQ(std::stod(r.out), exact::joint_cdf(p, solve_norming(p, 500.0), {2.0, 6.0}));
  EXPECT_EQ(r.out, "0.87641541397387945\n");
}

TEST(Cli, FiguresTwoExample) {
  const fs::path dir = scratch_dir("fig2");
  const auto r = run({"figures", "--which", "2", "--out", dir.string() + "/"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  for (const char* k : {"0.5", "1.0", "1.5", "6.0"}) {
    const fs::path f = dir / (std::string("fig2_k") + k + ".csv");
    ASSERT_TRUE(fs::exists(f)) << f;
    const std::string text = slurp(f);
    EXPECT_EQ(text.substr(0, text.find('\n')), "n,exact_pdf,t1,t2,t3");
  }
  fs::remove_all(dir);
}

TEST(Cli, ProbeExample) {
  const auto r = run({"probe", "--id", "thm23", "--k", "1", "--sigma", "1", "--x", "0", "--y", "0"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["functional_id"], "thm23");
  EXPECT_LT(doc["first"]["abs_gap"].get<double>(), 0.05);
  EXPECT_LT(doc["second"]["abs_gap"].get<double>(), 0.75);
}

TEST(Cli, FiguresAreByteStable) {
  const fs::path a = scratch_dir("figs_a");
  const fs::path b = scratch_dir("figs_b");
  ASSERT_EQ(run({"figures", "--which", "all", "--dir", a.string()}).code, 0);
  ASSERT_EQ(run({"figures", "--which", "all", "--dir", b.string()}).code, 0);
  std::size_t files = 0;
  for (const auto& e : fs::directory_iterator(a)) {
    ++files;
    EXPECT_EQ(slurp(e.path()), slurp(b / e.path().filename())) << e.path();
  }
  // fig1, four fig2 shapes, four panels each of fig3 and fig4
  EXPECT_EQ(files, 13u);
  const std::string fig3a = slurp(a / "fig3_a.csv");
  EXPECT_EQ(fig3a.substr(0, fig3a.find('\n')), "x,y,exact_cdf,s1,s2,s3,delta1,delta2,delta3");
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST(Cli, OtherSubcommands) {
  EXPECT_NEAR(std::stod(run({"dist", "pdf", "--x", "1"}).out), 0.24197072451914337, 1e-15);
  EXPECT_EQ(run({"dist", "cdf", "--x", "2"}).code, 0);
  EXPECT_EQ(run({"dist", "quantile", "--q", "0.5"}).out, "0\n");
  EXPECT_EQ(run({"dist", "mills", "--x", "4", "--terms", "2"}).code, 0);
  const auto nm = run({"norming", "--n", "1e6", "--format", "json"});
  ASSERT_EQ(nm.code, 0) << nm.err;
  EXPECT_GT(nlohmann::json::parse(nm.out)["b"].get<double>(), 0.0);
  EXPECT_EQ(run({"approx", "pdf", "--n", "500", "--x", "0", "--y", "0", "--order", "1"}).out,
            "0.1353352832366127\n");
  EXPECT_EQ(run({"exact", "h", "--n", "1e6", "--x", "0", "--y", "0"}).code, 0);
  const auto errs = run({"errors", "--n-grid", "50,500", "--x-grid", "1", "--y-grid", "0"});
  ASSERT_EQ(errs.code, 0) << errs.err;
  EXPECT_EQ(std::count(errs.out.begin(), errs.out.end(), '\n'), 3);
  const auto rates = run({"rates", "--side", "cdf", "--order", "1", "--x", "1", "--y", "0"});
  ASSERT_EQ(rates.code, 0) << rates.err;
  EXPECT_NEAR(std::stod(rates.out), 1.0, 0.15);
  const auto mc = run({"mc", "--n", "20", "--reps", "500", "--x-grid", "0", "--y-grid", "0,1",
                       "--format", "json"});
  ASSERT_EQ(mc.code, 0) << mc.err;
  EXPECT_EQ(nlohmann::json::parse(mc.out)["empirical"].size(), 2u);
}

TEST(Cli, OutputFile) {
  const fs::path dir = scratch_dir("out");
  const fs::path f = dir / "e.csv";
  ASSERT_EQ(run({"errors", "--n-grid", "50", "--x-grid", "1", "--y-grid", "0", "--out", f.string()}).code,
            0);
  EXPECT_EQ(slurp(f).substr(0, 8), "k,sigma,");
  fs::remove_all(dir);
}

TEST(Cli, ConfigFileWithFlagOverride) {
  const fs::path dir = scratch_dir("config");
  const fs::path cfg = dir / "run.toml";
  std::ofstream(cfg) << "k = 2\nsigma = 1\n";
  const auto from_file = run({"--config", cfg.string(), "norming", "--n", "100"});
  const auto explicit_k = run({"--k", "2", "norming", "--n", "100"});
  const auto overridden = run({"--config", cfg.string(), "--k", "1", "norming", "--n", "100"});
  const auto k1 = run({"--k", "1", "norming", "--n", "100"});
  ASSERT_EQ(from_file.code, 0) << from_file.err;
  EXPECT_EQ(from_file.out, explicit_k.out);
  EXPECT_EQ(overridden.out, k1.out);
  fs::remove_all(dir);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, cli::kExitUsage);
  EXPECT_EQ(run({"bogus"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"norming", "--bogus", "1"}).code, cli::kExitUsage);
  const auto bad_k = run({"--k", "-1", "norming", "--n", "100"});
  EXPECT_EQ(bad_k.code, cli::kExitUsage);
  EXPECT_NE(bad_k.err.find("--k"), std::string::npos) << bad_k.err;
  EXPECT_EQ(run({"norming", "--n", "2"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"approx", "cdf", "--order", "4"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"probe", "--id", "nope"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"mc", "--n", "100000", "--reps", "100000"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"--format", "xml", "norming"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"errors", "--n-grid", "1:2"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"--help"}).code, cli::kExitOk);
}

TEST(Cli, NumericFailure) {
  const auto r = run({"rates", "--side", "pdf", "--order", "1", "--x", "0", "--y", "40",
                      "--n-grid", "1e100,1e200,1e300"});
  EXPECT_EQ(r.code, cli::kExitNumeric);
  EXPECT_FALSE(r.err.empty());
}

TEST(Cli, UnwritableOutput) {
  const auto r = run({"errors", "--n-grid", "50", "--x-grid", "1", "--y-grid", "0", "--out",
                      "/nonexistent-dir/x.csv"});
  EXPECT_NE(r.code, cli::kExitOk);
  EXPECT_FALSE(r.err.empty());
}

std::vector<std::string> split_words(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> words;
  for (std::string w; in >> w;) words.push_back(w);
  return words;
}

TEST(Cli, ReadmeExamplesRun) {
  std::ifstream readme(fs::path(GMDX_SOURCE_DIR) / "README.md");
  ASSERT_TRUE(readme.good());
  const fs::path dir = scratch_dir("readme");
  const fs::path old = fs::current_path();
  fs::current_path(dir);
  int ran = 0;
  for (std::string line; std::getline(readme, line);) {
    if (line.rfind("gmd-extremes ", 0) != 0 || line.find('[') != std::string::npos) continue;
    auto words = split_words(line);
    words.erase(words.begin());
    const auto r = run(words);
    EXPECT_EQ(r.code, cli::kExitOk) << line << '\n' << r.err;
    EXPECT_FALSE(r.out.empty()) << line;
    ++ran;
  }
  fs::current_path(old);
  fs::remove_all(dir);
  EXPECT_GE(ran, 7);
}

}  // namespace
