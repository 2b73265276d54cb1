#pragma once

// Embedding-based graph construction: cosine similarities, the eight edge
// weighting functions, and the both-positive edge rule.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <ostream>
#include <span>
#include <utility>
#include <vector>

#include "gleake/dense_vector.hpp"
#include "gleake/error.hpp"
#include "gleake/text_pipeline.hpp"

namespace gleake {

inline constexpr double kF2Epsilon = 1e-6;

// Cosine similarity; 0 when either vector has zero norm.
inline double cosine(const DenseVector& a, const DenseVector& b) {
  a.require_same_dimension(b);
  double ab = 0.0, aa = 0.0, bb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ab += a[i] * b[i];
    aa += a[i] * a[i];
    bb += b[i] * b[i];
  }
  if (aa == 0.0 || bb == 0.0) return 0.0;
  return std::clamp(ab / (std::sqrt(aa) * std::sqrt(bb)), -1.0, 1.0);
}

inline double f1_from_cos(double cos) { return cos; }

inline double f2_from_cos(double cos) {
  return 1.0 / (1.0 - std::clamp(cos, -1.0, 1.0 - kF2Epsilon));
}

inline double f1(const DenseVector& a, const DenseVector& b) { return f1_from_cos(cosine(a, b)); }
inline double f2(const DenseVector& a, const DenseVector& b) { return f2_from_cos(cosine(a, b)); }

struct DualVector {
  DenseVector local;
  DenseVector global;
};

inline bool valid_function_id(int id) { return id >= 1 && id <= 8; }

// Functions 1-4 compare the two candidates; 5-8 compare the candidate sum with
// the document. Odd/even and the 1-2 vs 3-4 split pick F1 or F2 per space.
inline std::optional<double> edge_weight_from_cosines(int function_id, double local_cos,
                                                      double global_cos) {
  if (!valid_function_id(function_id)) {
    throw Error("weighting function id must be in 1..8, got " + std::to_string(function_id));
  }
  if (!(local_cos > 0.0) || !(global_cos > 0.0)) return std::nullopt;
  const int row = (function_id - 1) % 4;
  const bool local_f2 = row >= 2;
  const bool global_f2 = row % 2 == 1;
  const double l = local_f2 ? f2_from_cos(local_cos) : f1_from_cos(local_cos);
  const double g = global_f2 ? f2_from_cos(global_cos) : f1_from_cos(global_cos);
  return l * g;
}

inline std::optional<double> edge_weight(int function_id, const DualVector& ci, const DualVector& cj,
                                         const DualVector& doc) {
  if (!valid_function_id(function_id)) {
    throw Error("weighting function id must be in 1..8, got " + std::to_string(function_id));
  }
  double local_cos = 0.0, global_cos = 0.0;
  if (function_id <= 4) {
    local_cos = cosine(ci.local, cj.local);
    global_cos = cosine(ci.global, cj.global);
  } else {
    local_cos = cosine(ci.local + cj.local, doc.local);
    global_cos = cosine(ci.global + cj.global, doc.global);
  }
  return edge_weight_from_cosines(function_id, local_cos, global_cos);
}

struct Edge {
  std::size_t i = 0;
  std::size_t j = 0;  // i < j
  double weight = 0.0;
};

// Undirected weighted graph with adjacency lists.
class WeightedGraph {
 public:
  WeightedGraph() = default;
  explicit WeightedGraph(std::size_t n) : adjacency_(n) {}

  std::size_t size() const noexcept { return adjacency_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const std::vector<std::pair<std::size_t, double>>& neighbors(std::size_t v) const {
    return adjacency_[v];
  }

  void add_edge(std::size_t a, std::size_t b, double weight) {
    if (a == b) throw Error("self-loops are not allowed");
    if (a >= size() || b >= size()) throw Error("edge endpoint out of range");
    if (!(weight > 0.0) || !std::isfinite(weight)) throw Error("edge weights must be finite and positive");
    if (a > b) std::swap(a, b);
    for (const auto& [u, w] : adjacency_[a]) {
      if (u == b) throw Error("duplicate edge");
    }
    edges_.push_back({a, b, weight});
    adjacency_[a].emplace_back(b, weight);
    adjacency_[b].emplace_back(a, weight);
  }

  std::optional<double> weight(std::size_t a, std::size_t b) const {
    for (const auto& [u, w] : adjacency_[a]) {
      if (u == b) return w;
    }
    return std::nullopt;
  }

 private:
  std::vector<Edge> edges_;
  std::vector<std::vector<std::pair<std::size_t, double>>> adjacency_;
};

struct KeyGraph {
  std::vector<Candidate> nodes;
  WeightedGraph graph;
  int function_id = 0;
  DualVector doc;
};

// Evaluates every unordered pair; isolated candidates stay as nodes.
inline KeyGraph build_graph(std::vector<Candidate> cands, std::span<const DualVector> vectors,
                            const DualVector& doc, int function_id) {
  if (cands.size() != vectors.size()) throw Error("one dual vector per candidate is required");
  if (!valid_function_id(function_id)) {
    throw Error("weighting function id must be in 1..8, got " + std::to_string(function_id));
  }
  KeyGraph g{std::move(cands), WeightedGraph(vectors.size()), function_id, doc};
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    for (std::size_t j = i + 1; j < vectors.size(); ++j) {
      if (auto w = edge_weight(function_id, vectors[i], vectors[j], doc)) g.graph.add_edge(i, j, *w);
    }
  }
  return g;
}

// W(c, D) = cos(LV_c, LV_D) * cos(GV_c, GV_D), the personalization weight.
inline std::vector<double> document_affinity(std::span<const DualVector> vectors, const DualVector& doc) {
  std::vector<double> w;
  w.reserve(vectors.size());
  for (const auto& v : vectors) w.push_back(cosine(v.local, doc.local) * cosine(v.global, doc.global));
  return w;
}

// Debug dump: one "i<TAB>j<TAB>weight" line per edge.
inline void write_edge_list(std::ostream& out, const WeightedGraph& g) {
  char buf[64];
  for (const auto& e : g.edges()) {
    std::snprintf(buf, sizeof buf, "%.6f", e.weight);
    out << e.i << '\t' << e.j << '\t' << buf << '\n';
  }
}

}  // namespace gleake
