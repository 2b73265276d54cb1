#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "gleake/pos_tagger.hpp"

using namespace gleake;

namespace {

std::vector<std::string> words(std::initializer_list<const char*> ws) {
  return {ws.begin(), ws.end()};
}

const std::filesystem::path kBrillDir = std::filesystem::path(GLEAKE_DATA_DIR) / "tagger";

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("gleake_pos_" + name);
}

}  // namespace

TEST(BuiltinTagger, TagsCommonPhrases) {
  const BrillTagger t;
  const auto ws = words({"the", "sensor", "networks", "are", "scalable"});
  const auto tags = t.tag(ws);
  ASSERT_EQ(tags.size(), ws.size());
  EXPECT_EQ(tags[0], "DT");
  EXPECT_EQ(tags[1].substr(0, 2), "NN");
  EXPECT_EQ(tags[2], "NNS");
  EXPECT_EQ(tags[4], "JJ");
}

TEST(BuiltinTagger, EveryTagIsPenn) {
  const BrillTagger t;
  const auto ws = words({"we", "propose", "quickly", "running", "tokenized", "graphs", "of", "42",
                         "zyzzyvas", "and", "xqwerty"});
  for (const auto& tag : t.tag(ws)) EXPECT_TRUE(is_penn_tag(tag)) << tag;
  EXPECT_TRUE(t.tag({}).empty());
}

TEST(BrillTagger, LoadsShippedModel) {
  const auto t = BrillTagger::from_directory(kBrillDir);
  EXPECT_GT(t.lexicon_size(), 50000u);
  const auto ws = words({"we", "present", "a", "new", "method", "for", "keyphrase", "extraction"});
  const auto tags = t.tag(ws);
  EXPECT_EQ(tags[0], "PRP");
  EXPECT_EQ(tags[2], "DT");
  EXPECT_EQ(tags[3], "JJ");
  EXPECT_EQ(tags[4], "NN");
  EXPECT_EQ(tags[5], "IN");
  EXPECT_EQ(tags[7], "NN");
}

TEST(BrillTagger, UnknownWordsGuessedFromShape) {
  const auto t = BrillTagger::from_directory(kBrillDir);
  const auto tags = t.tag(words({"the", "frobnications"}));
  EXPECT_EQ(tags[1], "NNS");
}

TEST(BrillTagger, MissingDirectoryNamesTheFile) {
  try {
    BrillTagger::from_directory("/nonexistent/tagger");
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("en-lexicon.txt"), std::string::npos);
  }
}

TEST(BrillTagger, ContextRuleApplies) {
  const auto dir = temp_file("brill");
  std::filesystem::create_directories(dir);
  { std::ofstream(dir / "en-lexicon.txt") << "the DT\nrun VB\n"; }
  { std::ofstream(dir / "en-morphology.txt") << ""; }
  { std::ofstream(dir / "en-context.txt") << "VB NN PREVTAG DT\n"; }
  const auto t = BrillTagger::from_directory(dir);
  EXPECT_EQ(t.tag(words({"the", "run"})), words({"DT", "NN"}));
  EXPECT_EQ(t.tag(words({"run"})), words({"VB"}));
  std::filesystem::remove_all(dir);
}

TEST(Perceptron, LearnsSmallCorpusAndRoundTrips) {
  const auto corpus = temp_file("corpus.txt");
  {
    std::ofstream out(corpus);
    for (int i = 0; i < 30; ++i) {
      out << "the/DT dog/NN runs/VBZ fast/RB\n";
      out << "a/DT cat/NN sleeps/VBZ\n";
      out << "the/DT big/JJ dogs/NNS run/VBP\n";
    }
  }
  const auto sentences = AveragedPerceptronTagger::read_tagged_corpus(corpus);
  ASSERT_EQ(sentences.size(), 90u);
  AveragedPerceptronTagger t;
  t.train(sentences, 5, 1);
  const auto ws = words({"the", "big", "cat", "sleeps"});
  const auto tags = t.tag(ws);
  EXPECT_EQ(tags, words({"DT", "JJ", "NN", "VBZ"}));

  const auto model = temp_file("model.txt");
  t.save(model);
  const auto loaded = AveragedPerceptronTagger::load(model);
  EXPECT_EQ(loaded.tag(ws), tags);

  AveragedPerceptronTagger again;
  again.train(sentences, 5, 1);
  const auto other = temp_file("model2.txt");
  again.save(other);
  std::ifstream a(model), b(other);
  EXPECT_EQ(std::string(std::istreambuf_iterator<char>(a), {}),
            std::string(std::istreambuf_iterator<char>(b), {}));
  std::filesystem::remove(corpus);
  std::filesystem::remove(model);
  std::filesystem::remove(other);
}

TEST(Perceptron, MalformedCorpusReportsLine) {
  const auto corpus = temp_file("bad.txt");
  { std::ofstream(corpus) << "ok/NN\nbroken token/NN\n"; }
  try {
    AveragedPerceptronTagger::read_tagged_corpus(corpus);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find(":2"), std::string::npos) << e.what();
  }
  std::filesystem::remove(corpus);
}

TEST(Perceptron, EmptyModelRejected) {
  const auto model = temp_file("empty.txt");
  { std::ofstream(model) << ""; }
  EXPECT_THROW(AveragedPerceptronTagger::load(model), Error);
  std::filesystem::remove(model);
}
