#include <gtest/gtest.h>

#include <memory>

#include "gleake/global_embedding.hpp"

using namespace gleake;

namespace {

std::shared_ptr<const VectorTable> small_table() {
  auto t = std::make_shared<VectorTable>(2);
  t->insert("sensor", DenseVector{1.0, 0.0});
  t->insert("network", DenseVector{0.0, 2.0});
  t->insert("energy", DenseVector{-1.0, 1.0});
  return t;
}

Candidate cand(std::vector<std::string> words) { return {std::move(words), 1, 0, {0}}; }

std::vector<TaggedToken> tokens(std::initializer_list<const char*> ws) {
  std::vector<TaggedToken> out;
  for (const char* w : ws) out.push_back({w, w, "NN", out.size()});
  return out;
}

}  // namespace

TEST(WordSum, SumsKnownWordsAndFlagsCoverage) {
  const auto m = GlobalMapper::word_sum(small_table());
  EXPECT_EQ(m.dimension(), 2u);
  const auto hit = phrase_global_vector(m, cand({"sensor", "network", "zzz"}));
  EXPECT_TRUE(hit.covered);
  EXPECT_EQ(hit.vector, (DenseVector{1.0, 2.0}));
  const auto miss = phrase_global_vector(m, cand({"zzz", "qqq"}));
  EXPECT_FALSE(miss.covered);
  EXPECT_TRUE(miss.vector.is_zero());
  EXPECT_THROW(GlobalMapper::word_sum(nullptr), Error);
}

TEST(WordSum, CoveredEvenWhenVectorsCancel) {
  auto t = std::make_shared<VectorTable>(1);
  t->insert("up", DenseVector{1.0});
  t->insert("down", DenseVector{-1.0});
  const auto r = GlobalMapper::word_sum(t).map(std::vector<std::string>{"up", "down"});
  EXPECT_TRUE(r.covered);
  EXPECT_TRUE(r.vector.is_zero());
}

TEST(DocumentVector, UsesLeadingTokens) {
  const auto m = GlobalMapper::word_sum(small_table());
  const auto doc = tokens({"sensor", "energy", "network", "sensor"});
  EXPECT_EQ(document_global_vector(m, doc, 2), (DenseVector{0.0, 1.0}));
  EXPECT_EQ(document_global_vector(m, doc, 100), (DenseVector{1.0, 3.0}));
  EXPECT_THROW(document_global_vector(m, doc, 0), Error);
}

TEST(External, EncoderIsCalledWithTheWholeSequence) {
  std::vector<std::string> seen;
  const auto m = GlobalMapper::external(
      [&](std::span<const std::string> ws) {
        seen.assign(ws.begin(), ws.end());
        return DenseVector{static_cast<double>(ws.size()), 0.0, 1.0};
      },
      3);
  EXPECT_EQ(m.kind(), GlobalMapper::Kind::External);
  const auto r = phrase_global_vector(m, cand({"a", "b"}));
  EXPECT_EQ(seen, (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(r.vector, (DenseVector{2.0, 0.0, 1.0}));
  EXPECT_TRUE(r.covered);
}

TEST(External, WrongDimensionAndZeroVector) {
  const auto bad = GlobalMapper::external([](std::span<const std::string>) { return DenseVector{1.0}; }, 2);
  EXPECT_THROW(bad.map(std::vector<std::string>{"x"}), Error);
  const auto zero = GlobalMapper::external([](std::span<const std::string>) { return DenseVector(2); }, 2);
  EXPECT_FALSE(zero.map(std::vector<std::string>{"x"}).covered);
  EXPECT_THROW(GlobalMapper::external(nullptr, 2), Error);
}

TEST(Coverage, ReportsFullyOutOfVocabularyCandidates) {
  const auto m = GlobalMapper::word_sum(small_table());
  const std::vector<Candidate> cands = {cand({"sensor"}), cand({"zzz"}), cand({"zzz", "energy"}),
                                        cand({"qqq", "rrr"})};
  const auto s = global_oov_report(m, cands);
  EXPECT_DOUBLE_EQ(s.oov_fraction, 0.5);
  EXPECT_EQ(s.fully_oov, (std::vector<std::string>{"zzz", "qqq rrr"}));
  EXPECT_DOUBLE_EQ(global_oov_report(m, std::vector<Candidate>{}).oov_fraction, 0.0);
}
