#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "gleake/graph_engine.hpp"
#include "oracles.hpp"

using namespace gleake;

namespace {

std::vector<double> random_vector(std::mt19937_64& rng, std::size_t dim) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<double> v(dim);
  for (auto& x : v) x = g(rng);
  return v;
}

DenseVector dv(const std::vector<double>& v) { return DenseVector(v); }

}  // namespace

TEST(Similarity, CosineBasics) {
  EXPECT_DOUBLE_EQ(cosine(dv({1, 0}), dv({0, 1})), 0.0);
  EXPECT_DOUBLE_EQ(cosine(dv({1, 2}), dv({2, 4})), 1.0);
  EXPECT_DOUBLE_EQ(cosine(dv({0, 0}), dv({1, 1})), 0.0);
  EXPECT_THROW(cosine(dv({1}), dv({1, 2})), Error);
}

TEST(Similarity, F2AmplifiesAndStaysFinite) {
  EXPECT_DOUBLE_EQ(f2_from_cos(0.0), 1.0);
  EXPECT_DOUBLE_EQ(f2_from_cos(0.5), 2.0);
  EXPECT_TRUE(std::isfinite(f2_from_cos(1.0)));
  EXPECT_NEAR(f2_from_cos(1.0), 1e6, 1e-3);
}

TEST(EdgeWeight, AllFunctionsMatchRowByRowOracle) {
  std::mt19937_64 rng(5);
  int edges = 0, gaps = 0;
  for (int trial = 0; trial < 500; ++trial) {
    oracle::Quad q{random_vector(rng, 4), random_vector(rng, 4), random_vector(rng, 4),
                   random_vector(rng, 3), random_vector(rng, 3), random_vector(rng, 3)};
    const DualVector ci{dv(q.li), dv(q.gi)}, cj{dv(q.lj), dv(q.gj)}, doc{dv(q.ld), dv(q.gd)};
    for (int id = 1; id <= 8; ++id) {
      const auto got = edge_weight(id, ci, cj, doc);
      const auto want = oracle::weight(id, q);
      ASSERT_EQ(got.has_value(), want.has_value()) << "id " << id;
      if (got) {
        EXPECT_NEAR(*got, *want, 1e-12 * std::max(1.0, std::abs(*want)));
        EXPECT_GT(*got, 0.0);
        ++edges;
      } else {
        ++gaps;
      }
    }
  }
  EXPECT_GT(edges, 0);
  EXPECT_GT(gaps, 0);
}

TEST(EdgeWeight, NonPositiveCosineMeansNoEdge) {
  for (int id = 1; id <= 8; ++id) {
    EXPECT_FALSE(edge_weight_from_cosines(id, 0.0, 0.5));
    EXPECT_FALSE(edge_weight_from_cosines(id, 0.5, 0.0));
    EXPECT_FALSE(edge_weight_from_cosines(id, -0.2, 0.9));
    EXPECT_TRUE(edge_weight_from_cosines(id, 0.1, 0.1));
  }
  const DualVector a{dv({1, 0}), dv({1, 1})}, b{dv({0, 1}), dv({1, 1})}, doc{dv({1, 1}), dv({1, 1})};
  EXPECT_FALSE(edge_weight(1, a, b, doc));  // orthogonal local vectors
}

TEST(EdgeWeight, ExampleValues) {
  // local cos 0.6, global cos 0.5
  EXPECT_DOUBLE_EQ(*edge_weight_from_cosines(1, 0.6, 0.5), 0.3);
  EXPECT_DOUBLE_EQ(*edge_weight_from_cosines(2, 0.6, 0.5), 1.2);
  EXPECT_DOUBLE_EQ(*edge_weight_from_cosines(3, 0.6, 0.5), 1.25);
  EXPECT_DOUBLE_EQ(*edge_weight_from_cosines(4, 0.6, 0.5), 5.0);
  EXPECT_THROW(edge_weight_from_cosines(0, 0.5, 0.5), Error);
  EXPECT_THROW(edge_weight_from_cosines(9, 0.5, 0.5), Error);
}

TEST(WeightedGraph, RejectsBadEdges) {
  WeightedGraph g(3);
  g.add_edge(0, 1, 0.5);
  EXPECT_THROW(g.add_edge(1, 0, 0.7), Error);
  EXPECT_THROW(g.add_edge(1, 1, 0.7), Error);
  EXPECT_THROW(g.add_edge(0, 3, 0.7), Error);
  EXPECT_THROW(g.add_edge(0, 2, 0.0), Error);
  EXPECT_THROW(g.add_edge(0, 2, std::nan("")), Error);
  EXPECT_EQ(g.weight(1, 0), 0.5);
  EXPECT_FALSE(g.weight(0, 2));
}

TEST(BuildGraph, MatchesPairwiseOracleAndKeepsIsolatedNodes) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 6;
    std::vector<Candidate> cands;
    std::vector<DualVector> vecs;
    std::vector<oracle::Quad> raw;
    for (std::size_t i = 0; i < n; ++i) {
      cands.push_back({{"w" + std::to_string(i)}, 1, i, {i}});
      oracle::Quad q{random_vector(rng, 3), {}, {}, random_vector(rng, 3), {}, {}};
      raw.push_back(q);
      vecs.push_back({dv(q.li), dv(q.gi)});
    }
    const auto dl = random_vector(rng, 3), dg = random_vector(rng, 3);
    const DualVector doc{dv(dl), dv(dg)};
    for (int id : {1, 6}) {
      const auto kg = build_graph(cands, vecs, doc, id);
      ASSERT_EQ(kg.graph.size(), n);
      std::size_t expected_edges = 0;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
          oracle::Quad q{raw[i].li, raw[j].li, dl, raw[i].gi, raw[j].gi, dg};
          const auto want = oracle::weight(id, q);
          const auto got = kg.graph.weight(i, j);
          ASSERT_EQ(got.has_value(), want.has_value());
          if (want) {
            ++expected_edges;
            EXPECT_NEAR(*got, *want, 1e-12 * std::max(1.0, *want));
          }
        }
      }
      EXPECT_EQ(kg.graph.edges().size(), expected_edges);
    }
  }
}

TEST(BuildGraph, SizeMismatchAndBadIdThrow) {
  std::vector<Candidate> cands = {{{"a"}, 1, 0, {0}}};
  std::vector<DualVector> vecs;
  EXPECT_THROW(build_graph(cands, vecs, {}, 1), Error);
  vecs.push_back({dv({1}), dv({1})});
  EXPECT_THROW(build_graph(cands, vecs, {dv({1}), dv({1})}, 9), Error);
  EXPECT_EQ(build_graph(cands, vecs, {dv({1}), dv({1})}, 1).graph.size(), 1u);
}

TEST(EdgeList, Format) {
  WeightedGraph g(3);
  g.add_edge(2, 0, 0.25);
  g.add_edge(1, 2, 1.0 / 3.0);
  std::ostringstream out;
  write_edge_list(out, g);
  EXPECT_EQ(out.str(), "0\t2\t0.250000\n1\t2\t0.333333\n");
}

TEST(DocumentAffinity, ProductOfCosines) {
  std::vector<DualVector> vecs = {{dv({1, 0}), dv({1, 1})}, {dv({0, 1}), dv({1, 0})}};
  const DualVector doc{dv({1, 1}), dv({1, 0})};
  const auto w = document_affinity(vecs, doc);
  ASSERT_EQ(w.size(), 2u);
  EXPECT_NEAR(w[0], std::sqrt(0.5) * std::sqrt(0.5), 1e-15);
  EXPECT_NEAR(w[1], std::sqrt(0.5) * 1.0, 1e-15);
}
