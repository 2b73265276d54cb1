#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "gleake/corpus_io.hpp"

using namespace gleake;
namespace fs = std::filesystem;

namespace {

class TempDir {
 public:
  explicit TempDir(const std::string& name) : path_(fs::temp_directory_path() / ("gleake_io_" + name)) {
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }
  fs::path write(const std::string& file, const std::string& content) const {
    std::ofstream(path_ / file) << content;
    return path_ / file;
  }

 private:
  fs::path path_;
};

std::size_t error_line(const std::function<void()>& f) {
  try {
    f();
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST(Gold, NormalizesAndDeduplicates) {
  const auto g = parse_gold("d1", "  Wireless  Sensor Network \n\nrouting\r\nwireless sensor network\nROUTING\n");
  EXPECT_EQ(g.doc_id, "d1");
  EXPECT_EQ(g.phrases, (std::vector<std::string>{"wireless sensor network", "routing"}));
  EXPECT_TRUE(parse_gold("x", "").phrases.empty());
}

TEST(Dataset, PairsDocumentsWithKeysInIdOrder) {
  TempDir dir("dataset");
  dir.write("b.txt", "second doc");
  dir.write("b.key", "beta\n");
  dir.write("a.txt", "first doc");
  dir.write("a.key", "alpha\n");
  dir.write("orphan.txt", "no key");
  dir.write("notes.md", "ignored");
  const auto ds = load_dataset(dir.path());
  ASSERT_EQ(ds.entries.size(), 2u);
  EXPECT_EQ(ds.entries[0].document.id, "a");
  EXPECT_EQ(ds.entries[0].document.text, "first doc");
  EXPECT_EQ(ds.entries[1].gold.phrases, (std::vector<std::string>{"beta"}));
  ASSERT_EQ(ds.warnings.size(), 1u);
  EXPECT_NE(ds.warnings[0].find("orphan"), std::string::npos);
  EXPECT_THROW(load_dataset(dir.path() / "missing"), Error);
}

TEST(Dataset, ShippedFixtureLoads) {
  const auto ds = load_dataset(fs::path(GLEAKE_DATA_DIR) / "fixture" / "abstracts");
  EXPECT_EQ(ds.entries.size(), 5u);
  EXPECT_TRUE(ds.warnings.empty());
  for (const auto& e : ds.entries) EXPECT_FALSE(e.gold.phrases.empty()) << e.document.id;
}

TEST(Vectors, ParsesWithAndWithoutHeader) {
  TempDir dir("vectors");
  const auto plain = dir.write("plain.txt", "graph 0.5 -1\nnode 1e-1 2\n\ngraph 9 9\n");
  const auto t = load_vector_table(plain);
  EXPECT_EQ(t.dimension(), 2u);
  EXPECT_EQ(t.size(), 2u);
  EXPECT_EQ(*t.find("graph"), (DenseVector{0.5, -1.0}));  // first entry wins
  EXPECT_EQ(t.words(), (std::vector<std::string>{"graph", "node"}));
  EXPECT_EQ(t.find("edge"), nullptr);

  const auto header = dir.write("header.txt", "2 3\na 1 2 3\nb 4 5 6\n");
  EXPECT_EQ(load_vector_table(header).dimension(), 3u);
  EXPECT_EQ(load_vector_table(header, 1).size(), 1u);
  EXPECT_THROW(load_vector_table(header, 0), Error);
}

TEST(Vectors, ErrorsCarryLineNumbers) {
  TempDir dir("badvectors");
  const auto ragged = dir.write("ragged.txt", "a 1 2\nb 1 2\nc 1\n");
  EXPECT_EQ(error_line([&] { load_vector_table(ragged); }), 3u);
  const auto text = dir.write("text.txt", "a 1 2\nb 1 oops\n");
  EXPECT_EQ(error_line([&] { load_vector_table(text); }), 2u);
  const auto nan = dir.write("nan.txt", "a nan 2\n");
  EXPECT_EQ(error_line([&] { load_vector_table(nan); }), 1u);
  const auto lonely = dir.write("lonely.txt", "\nword\n");
  EXPECT_EQ(error_line([&] { load_vector_table(lonely); }), 2u);
  EXPECT_THROW(load_vector_table(dir.write("empty.txt", "")), Error);
  EXPECT_THROW(load_vector_table(dir.path() / "nope.txt"), Error);
}

TEST(VectorTable, RejectsWrongDimensionAndNonFinite) {
  VectorTable t(2);
  EXPECT_TRUE(t.insert("a", DenseVector{1.0, 2.0}));
  EXPECT_FALSE(t.insert("a", DenseVector{3.0, 4.0}));
  EXPECT_THROW(t.insert("b", DenseVector{1.0}), Error);
  EXPECT_THROW(t.insert("c", DenseVector{1.0, std::numeric_limits<double>::infinity()}), Error);
  EXPECT_THROW(VectorTable(0), Error);
}

TEST(Report, RoundTrips) {
  const std::vector<ReportRow> rows = {{1, "wireless sensor network", 0.875}, {2, "routing", 0.125}};
  std::stringstream s;
  write_keyphrase_report(s, rows);
  EXPECT_EQ(s.str(), "rank\tphrase\tscore\n1\twireless sensor network\t0.875000\n2\trouting\t0.125000\n");
  EXPECT_EQ(read_keyphrase_report(s), rows);

  TempDir dir("report");
  write_keyphrase_report(dir.path() / "r.tsv", rows);
  EXPECT_EQ(read_keyphrase_report(dir.path() / "r.tsv"), rows);
}

TEST(Report, MalformedInput) {
  std::istringstream no_header("1\tx\t0.5\n");
  EXPECT_EQ(error_line([&] { read_keyphrase_report(no_header); }), 1u);
  std::istringstream bad_row("rank\tphrase\tscore\n1\tx\t0.5\nx\ty\n");
  EXPECT_EQ(error_line([&] { read_keyphrase_report(bad_row); }), 3u);
  std::istringstream bad_score("rank\tphrase\tscore\n1\tx\thigh\n");
  EXPECT_EQ(error_line([&] { read_keyphrase_report(bad_score); }), 2u);
}
