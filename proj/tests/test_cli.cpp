#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "genecon/json_io.hpp"

namespace fs = std::filesystem;

namespace {

const fs::path kData = GENECON_TEST_DATA_DIR;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "genecon");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = genecon::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("genecon_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    unsetenv("GENECON_THREADS");
  }
  void TearDown() override {
    fs::remove_all(dir_);
    unsetenv("GENECON_THREADS");
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  const std::string g_ = (kData / "caterpillar_surrogate_g.json").string();
  const std::string grid_ = (kData / "caterpillar_grid.json").string();
  const std::string study_ = (kData / "caterpillar_study.json").string();
  fs::path dir_;
};

}  // namespace

TEST_F(CliTest, MissingGridIsUsageError) {
  const auto r = run({"analyze", "--g", g_, "--J", "4"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("--grid"), std::string::npos);
}

TEST_F(CliTest, ExactlyOneInputRequired) {
  EXPECT_EQ(run({"analyze", "--grid", grid_, "--J", "4"}).code, 2);
  const auto both = run({"analyze", "--g", g_, "--data", "x.csv", "--grid", grid_, "--J", "4"});
  EXPECT_EQ(both.code, 2);
}

TEST_F(CliTest, BadFlagValuesAreUsageErrors) {
  EXPECT_EQ(run({"analyze", "--g", g_, "--grid", grid_, "--J", "7"}).code, 2);
  EXPECT_EQ(run({"analyze", "--g", g_, "--grid", grid_, "--J", "-1"}).code, 2);
  EXPECT_EQ(run({"analyze", "--g", g_, "--grid", grid_, "--J", "2", "--measure", "d3"}).code, 2);
  EXPECT_EQ(run({"analyze", "--g", g_, "--grid", grid_, "--J", "2", "--clip-tol", "-1"}).code, 2);
  EXPECT_EQ(run({"simulate", "--config", study_, "--reps", "0"}).code, 2);
  EXPECT_EQ(run({"simulate", "--config", study_, "--null-dim", "6", "--dry-run"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST_F(CliTest, MissingInputFileIsRuntimeError) {
  const auto r = run({"analyze", "--g", path("absent.json"), "--grid", grid_, "--J", "2"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("absent.json"), std::string::npos);
}

TEST_F(CliTest, GridMismatchNamesFile) {
  const auto r = run({"analyze", "--g", g_, "--grid", (kData / "jewelweed_grid.json").string(), "--J", "2"});
  EXPECT_EQ(r.code, 0);  // same K, different coordinates: accepted
  std::ofstream(path("grid3.json")) << R"({"points": [1, 2, 3]})";
  const auto bad = run({"analyze", "--g", g_, "--grid", path("grid3.json"), "--J", "2"});
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.err.find("caterpillar_surrogate_g.json"), std::string::npos);
}

TEST_F(CliTest, AnalyzeWritesReportAndFigure) {
  const auto r = run({"analyze", "--g", g_, "--grid", grid_, "--J", "4", "--measure", "d1", "--out",
                      path("report.json"), "--svg", path("fig.svg")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto report = genecon::read_json_file(path("report.json"));
  EXPECT_EQ(report["J"], 4);
  EXPECT_EQ(report["vectors"].size(), 6u);
  EXPECT_EQ(report["provenance"]["inputs"]["g_matrix"], g_);
  const std::string svg = slurp(path("fig.svg"));
  EXPECT_NE(svg.find("<metadata id=\"provenance\">"), std::string::npos);
  EXPECT_FALSE(fs::exists(path("report.json.tmp")));
}

TEST_F(CliTest, AnalyzeToStdout) {
  const auto r = run({"analyze", "--g", g_, "--grid", grid_, "--J", "1"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(genecon::Json::parse(r.out)["J"], 1);
}

TEST_F(CliTest, DryRunWritesNothing) {
  const auto r = run({"analyze", "--g", g_, "--grid", grid_, "--J", "4", "--out", path("r.json"), "--dry-run"});
  EXPECT_EQ(r.code, 0);
  EXPECT_FALSE(fs::exists(path("r.json")));
  const auto s = run({"simulate", "--config", study_, "--out", path("s.json"), "--dry-run"});
  EXPECT_EQ(s.code, 0);
  EXPECT_FALSE(fs::exists(path("s.json")));
}

TEST_F(CliTest, SweepMatchesAnalyze) {
  const std::string out_dir = path("sweep/nested");
  const auto r = run({"sweep", "--g", g_, "--grid", grid_, "--out-dir", out_dir});
  ASSERT_EQ(r.code, 0) << r.err;
  std::size_t files = 0;
  for (const auto& e : fs::directory_iterator(out_dir)) {
    (void)e;
    ++files;
  }
  EXPECT_EQ(files, 14u);
  for (const char* j : {"0", "3", "6"}) {
    const std::string tag = std::string("J0") + j;
    ASSERT_EQ(run({"analyze", "--g", g_, "--grid", grid_, "--J", j, "--out", path("a.json"), "--svg",
                   path("a.svg")})
                  .code,
              0);
    EXPECT_EQ(slurp(path("a.json")), slurp(fs::path(out_dir) / ("report_" + tag + ".json")));
    EXPECT_EQ(slurp(path("a.svg")), slurp(fs::path(out_dir) / ("figure_" + tag + ".svg")));
  }
}

TEST_F(CliTest, SimulateThenAnalyzeDataset) {
  const auto s = run({"simulate", "--config", study_, "--reps", "3", "--out", path("s.json"), "--svg",
                      path("s.svg"), "--dataset-csv", path("d.csv")});
  ASSERT_EQ(s.code, 0) << s.err;
  EXPECT_NE(s.out.find("negative smallest eigenvalue"), std::string::npos);
  const auto summary = genecon::read_json_file(path("s.json"));
  EXPECT_EQ(summary["reps"], 3);
  EXPECT_EQ(summary["provenance"]["seed"], 20121);

  const auto a = run({"analyze", "--data", path("d.csv"), "--design", "halfsib", "--grid", grid_, "--J", "3",
                      "--out", path("a.json")});
  ASSERT_EQ(a.code, 0) << a.err;
  const auto report = genecon::read_json_file(path("a.json"));
  EXPECT_EQ(report["provenance"]["design"], "halfsib");
  EXPECT_EQ(report["provenance"]["relatedness"], 4.0);
  EXPECT_EQ(report["provenance"]["notes"]["families"], 100);
}

TEST_F(CliTest, SimulateOverridesAndThreadsAreDeterministic) {
  ASSERT_EQ(run({"simulate", "--config", study_, "--seed", "42", "--reps", "8", "--out", path("a.json"),
                 "--svg", path("a.svg")})
                .code,
            0);
  setenv("GENECON_THREADS", "3", 1);
  ASSERT_EQ(run({"simulate", "--config", study_, "--seed", "42", "--reps", "8", "--out", path("b.json"),
                 "--svg", path("b.svg")})
                .code,
            0);
  EXPECT_EQ(slurp(path("a.json")), slurp(path("b.json")));
  EXPECT_EQ(slurp(path("a.svg")), slurp(path("b.svg")));
  EXPECT_EQ(genecon::read_json_file(path("a.json"))["params"]["seed"], 42);

  setenv("GENECON_THREADS", "lots", 1);
  const auto bad = run({"simulate", "--config", study_, "--reps", "2"});
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.err.find("GENECON_THREADS"), std::string::npos);
}

TEST_F(CliTest, ConfigErrors) {
  std::ofstream(path("bad.json")) << R"({"grid": {"points": [0, 1, 2]}})";
  const auto r = run({"simulate", "--config", path("bad.json")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("\"G\""), std::string::npos);
  std::ofstream(path("broken.json")) << "{";
  EXPECT_EQ(run({"simulate", "--config", path("broken.json")}).code, 1);
}
