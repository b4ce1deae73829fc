#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include "rqa/fast_path.hpp"
#include "rqa/process.hpp"
#include "rqa/series.hpp"
#include "rqa/simulate.hpp"
#include "rqa/table.hpp"

namespace fs = std::filesystem;

namespace {

struct CliRun {
  int code = -1;
  std::string out;
};

CliRun run(const std::string& args) {
  const std::string cmd = std::string(RQA_CLI_PATH) + " " + args + " 2>/dev/null";
  CliRun r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  while (std::size_t got = std::fread(buf, 1, sizeof buf, pipe)) r.out.append(buf, got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

// Splits the CSV body (after the "#" lines) into header and data lines.
std::vector<std::string> body_lines(const std::string& out) {
  std::vector<std::string> lines;
  std::istringstream in(out);
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line[0] != '#') lines.push_back(line);
  }
  return lines;
}

std::string field(const std::string& header, const std::string& row, const std::string& name) {
  std::vector<std::string> h, v;
  std::istringstream hs(header), vs(row);
  for (std::string s; std::getline(hs, s, ',');) h.push_back(s);
  for (std::string s; std::getline(vs, s, ',');) v.push_back(s);
  for (std::size_t i = 0; i < h.size(); ++i)
    if (h[i] == name) return v.at(i);
  return "<missing>";
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("rqa_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  fs::path dir_;
};

}  // namespace

TEST_F(CliTest, ParityMeasures) {
  std::ofstream(path("parity.txt")) << "0\n1\n0\n1\n0\n";
  const CliRun r = run("measures --input " + path("parity.txt") + " --n 5 --m 1 --k 2 --metric discrete --r 0");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("# command: ", 0), 0u);
  const auto lines = body_lines(r.out);
  ASSERT_EQ(lines.size(), 2u);
  EXPECT_EQ(field(lines[0], lines[1], "RR_k"), "0.44");
  EXPECT_EQ(field(lines[0], lines[1], "DET_k"), "0.846154");
  EXPECT_EQ(field(lines[0], lines[1], "C_k"), "0.32");
  EXPECT_EQ(field(lines[0], lines[1], "LMAX"), "3");
}

TEST_F(CliTest, OrderPatternUsesPlotPipeline) {
  std::ofstream(path("x.txt")) << "1\n3\n2\n5\n9\n7\n4\n";
  const CliRun r = run("measures --input " + path("x.txt") + " --m 3 --k 1 --metric order-pattern --r 0");
  ASSERT_EQ(r.code, 0);
  const auto lines = body_lines(r.out);
  EXPECT_EQ(field(lines[0], lines[1], "n"), "5");
}

TEST_F(CliTest, AsymptIid) {
  const CliRun r = run("asympt --process '{\"type\":\"iid_gaussian\",\"sigma\":1}' --m 1 --k 2 --r 1.4142135");
  ASSERT_EQ(r.code, 0);
  const auto lines = body_lines(r.out);
  EXPECT_EQ(field(lines[0], lines[1], "det"), "0.899314");
  EXPECT_EQ(field(lines[0], lines[1], "det_se"), "NA");
}

TEST_F(CliTest, AsymptArHasStandardErrors) {
  const CliRun r = run("asympt --process '{\"type\":\"ar\",\"theta\":[0.25,0.4,0.3],\"sigma2\":1.5}' --m 3 --k 2 "
                    "--r 1.224744871391589 --samples 20000 --seed 3");
  ASSERT_EQ(r.code, 0);
  const auto lines = body_lines(r.out);
  EXPECT_NE(field(lines[0], lines[1], "det_se"), "NA");
  EXPECT_NE(r.out.find("# samples: 20000"), std::string::npos);
}

TEST_F(CliTest, SimulateThenMeasuresMatchesInProcess) {
  const std::string spec = R"({"type":"ar","theta":[0.25,0.4,0.3],"sigma2":1.5})";
  ASSERT_EQ(run("simulate --process '" + spec + "' --n 600 --seed 13 --out " + path("ar.txt")).code, 0);
  const rqa::Series file = rqa::read_series_file(path("ar.txt"));
  const rqa::Series direct = rqa::sample(rqa::parse_process_spec(spec), 600, 13);
  ASSERT_EQ(file.size(), direct.size());
  for (std::size_t i = 0; i < file.size(); ++i) ASSERT_EQ(file[i], direct[i]);

  const CliRun r = run("measures --input " + path("ar.txt") + " --m 3 --k 2 --r 1.5");
  ASSERT_EQ(r.code, 0);
  const auto lines = body_lines(r.out);
  const auto s = rqa::rqa_chebyshev_fast(direct, 598, 3, 2, 1.5);
  EXPECT_EQ(field(lines[0], lines[1], "DET_k"), rqa::format_sig6(s.determinism()->value()));
  EXPECT_EQ(field(lines[0], lines[1], "RR_k"), rqa::format_sig6(s.recurrence_rate().value()));
}

TEST_F(CliTest, PlotWritesPbm) {
  std::ofstream(path("parity.txt")) << "0\n1\n0\n1\n0\n";
  const CliRun r = run("plot --input " + path("parity.txt") + " --metric discrete --r 0 --out " + path("p.pbm"));
  ASSERT_EQ(r.code, 0);
  std::ifstream in(path("p.pbm"), std::ios::binary);
  const std::string pbm((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  EXPECT_EQ(pbm.substr(0, 7), "P4\n5 5\n");
  EXPECT_EQ(pbm.size(), 12u);
}

TEST_F(CliTest, OutputIsReproducibleAndThreadInvariant) {
  const std::string args = "table2 --reps 3 --n 200 --m 1,3 --k 2 --seed 5";
  const CliRun a = run("--threads 1 " + args);
  const CliRun b = run("--threads 3 " + args);
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(body_lines(a.out), body_lines(b.out));
  EXPECT_NE(a.out.find("# main_diagonal: excluded"), std::string::npos);
}

TEST_F(CliTest, ExperimentsRun) {
  EXPECT_EQ(run("entropy-det --a 0.3,0.6").code, 0);
  EXPECT_EQ(run("indistinguishable --k-max 4").code, 0);
  EXPECT_EQ(run("spurious --n 300 --m 1,2 --pbm-dir " + path("")).code, 0);
  EXPECT_TRUE(fs::exists(path("spurious_m2.pbm")));
  const CliRun c = run("converge --process '{\"type\":\"iid_gaussian\",\"sigma\":1}' --n 50,100 --r 1");
  ASSERT_EQ(c.code, 0);
  EXPECT_EQ(body_lines(c.out).size(), 3u);
}

TEST_F(CliTest, ExitCodes) {
  EXPECT_EQ(run("").code, 1);
  EXPECT_EQ(run("frobnicate").code, 1);
  EXPECT_EQ(run("measures --r 1").code, 1);
  EXPECT_EQ(run("--help").code, 0);
  EXPECT_EQ(run("measures --input " + path("missing.txt") + " --r 1").code, 2);
  std::ofstream(path("short.txt")) << "1\n2\n";
  EXPECT_EQ(run("measures --input " + path("short.txt") + " --m 5 --r 1").code, 2);
  EXPECT_EQ(run("simulate --process '{\"type\":\"garch\"}' --n 5").code, 2);
  EXPECT_EQ(run("asympt --process '{\"type\":\"ar\",\"theta\":[1.1],\"sigma2\":1}' --r 1").code, 3);
  EXPECT_EQ(run("asympt --process '{\"type\":\"markov\",\"transition\":[[0,1],[1,0]]}' --r 0").code, 3);
}
