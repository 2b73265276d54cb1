#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct Run {
  int status = -1;
  std::string out;
};

// Runs the CLI through the shell; stderr is merged into the captured output
// unless the arguments redirect it.
Run run(const std::string& args) {
  const std::string cmd = std::string("\"") + GLEAKE_CLI_PATH + "\" " + args;
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf;
  for (std::size_t n; (n = std::fread(buf.data(), 1, buf.size(), p)) > 0;) r.out.append(buf.data(), n);
  const int st = pclose(p);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

const fs::path kData = GLEAKE_DATA_DIR;
const std::string kDoc = (kData / "fixture" / "abstracts" / "sensor.txt").string();
const std::string kVectors = "--global-vectors " + (kData / "fixture" / "vectors.10k.txt").string();

std::string read_all(const fs::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST(Cli, ExtractPrintsRankedLines) {
  const auto r = run("extract " + kDoc + " " + kVectors + " --top-n 5 2>/dev/null");
  ASSERT_EQ(r.status, 0) << r.out;
  std::size_t lines = 0;
  for (std::size_t pos = 0; (pos = r.out.find('\n', pos)) != std::string::npos; ++pos) ++lines;
  EXPECT_EQ(lines, 5u);
  EXPECT_EQ(r.out.rfind("1  ", 0), 0u) << r.out;
}

TEST(Cli, TopNZeroIsEmptyAndSucceeds) {
  const auto r = run("extract " + kDoc + " " + kVectors + " --top-n 0 2>/dev/null");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "");
}

TEST(Cli, SameSeedSameOutput) {
  const auto a = run("extract " + kDoc + " " + kVectors + " --local-model skipgram --seed 9 2>/dev/null");
  const auto b = run("extract " + kDoc + " " + kVectors + " --local-model skipgram --seed 9 2>/dev/null");
  ASSERT_EQ(a.status, 0);
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, TsvReportMatchesHeader) {
  const auto out = fs::temp_directory_path() / "gleake_cli_report.tsv";
  const auto r = run("extract " + kDoc + " " + kVectors + " --format tsv -o " + out.string() + " 2>/dev/null");
  ASSERT_EQ(r.status, 0);
  EXPECT_EQ(read_all(out).rfind("rank\tphrase\tscore\n", 0), 0u);
  fs::remove(out);
}

TEST(Cli, MissingVectorsNamesTheStage) {
  const auto r = run("extract " + kDoc + " 2>&1");
  EXPECT_NE(r.status, 0);
  EXPECT_NE(r.out.find("stage 'global-vectors'"), std::string::npos) << r.out;
}

TEST(Cli, BadFlagValueFails) {
  EXPECT_NE(run("extract " + kDoc + " " + kVectors + " --function 12 2>&1").status, 0);
  EXPECT_NE(run("extract " + kDoc + " " + kVectors + " --centrality katz 2>&1").status, 0);
  EXPECT_NE(run("extract /nonexistent/doc.txt " + kVectors + " 2>&1").status, 0);
}

TEST(Cli, DumpGraphWritesEdgeList) {
  const auto r = run("dump-graph " + kDoc + " " + kVectors + " 2>/dev/null");
  ASSERT_EQ(r.status, 0);
  ASSERT_FALSE(r.out.empty());
  EXPECT_EQ(std::count(r.out.begin(), r.out.begin() + static_cast<long>(r.out.find('\n')), '\t'), 2);
}

TEST(Cli, EvaluateBaselineWritesReport) {
  const auto out = fs::temp_directory_path() / "gleake_cli_eval.tsv";
  const auto r = run("evaluate --dataset " + (kData / "fixture" / "abstracts").string() +
                     " --method tfidf-sum -o " + out.string() + " 2>&1");
  ASSERT_EQ(r.status, 0) << r.out;
  const auto text = read_all(out);
  EXPECT_EQ(text.rfind("dataset\ttp\tfp\tfn\tprecision\trecall\tf1\tconfig\terror\n", 0), 0u) << text;
  EXPECT_NE(text.find("\nsensor\t"), std::string::npos);
  fs::remove(out);
}

TEST(Cli, SweepReportsFailedRowsAndExitsNonzero) {
  const auto dir = fs::temp_directory_path() / "gleake_cli_sweep";
  fs::create_directories(dir);
  { std::ofstream(dir / "configs.txt") << "method=tfidf-mean\nmethod=gleake\n"; }
  const auto r = run("sweep --dataset " + (kData / "fixture" / "abstracts").string() + " --config " +
                     (dir / "configs.txt").string() + " -o " + (dir / "sweep.tsv").string() + " 2>&1");
  EXPECT_NE(r.status, 0);
  const auto text = read_all(dir / "sweep.tsv");
  EXPECT_NE(text.find("tfidf-mean"), std::string::npos);
  EXPECT_NE(text.find("global-vectors"), std::string::npos);
  EXPECT_TRUE(fs::exists(dir / "pr_curve.tsv"));
  fs::remove_all(dir);
}
