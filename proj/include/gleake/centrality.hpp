#pragma once

// Node centralities over a weighted undirected graph and top-N selection.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <queue>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "gleake/error.hpp"
#include "gleake/graph_engine.hpp"
#include "gleake/text_pipeline.hpp"

namespace gleake {

enum class CentralityKind {
  Degree,
  Eigenvector,
  PageRank,
  PersonalizedPageRank,
  Subgraph,
  Harmonic,
  Betweenness,
  Closeness,
};

inline constexpr CentralityKind kAllCentralities[] = {
    CentralityKind::Degree,   CentralityKind::Eigenvector, CentralityKind::PageRank,
    CentralityKind::PersonalizedPageRank, CentralityKind::Subgraph, CentralityKind::Harmonic,
    CentralityKind::Betweenness, CentralityKind::Closeness};

inline std::string_view to_string(CentralityKind k) {
  switch (k) {
    case CentralityKind::Degree: return "degree";
    case CentralityKind::Eigenvector: return "eigenvector";
    case CentralityKind::PageRank: return "pagerank";
    case CentralityKind::PersonalizedPageRank: return "ppr";
    case CentralityKind::Subgraph: return "subgraph";
    case CentralityKind::Harmonic: return "harmonic";
    case CentralityKind::Betweenness: return "betweenness";
    case CentralityKind::Closeness: return "closeness";
  }
  return "?";
}

inline CentralityKind parse_centrality(std::string_view s) {
  for (auto k : kAllCentralities) {
    if (s == to_string(k)) return k;
  }
  if (s == "personalized-pagerank" || s == "personalized_pagerank") return CentralityKind::PersonalizedPageRank;
  throw Error("unknown centrality '" + std::string(s) +
              "' (expected degree, eigenvector, pagerank, ppr, subgraph, harmonic, betweenness, closeness)");
}

// How an edge weight (similarity) becomes a path length.
enum class DistanceMode {
  Inverse,   // 1 / w
  OneMinus,  // 1 - w / (w_max (1 + 1e-6)), strictly positive
};

inline DistanceMode parse_distance_mode(std::string_view s) {
  if (s == "inverse") return DistanceMode::Inverse;
  if (s == "one-minus") return DistanceMode::OneMinus;
  throw Error("unknown distance mode '" + std::string(s) + "' (expected inverse or one-minus)");
}

inline std::string_view to_string(DistanceMode m) {
  return m == DistanceMode::Inverse ? "inverse" : "one-minus";
}

struct CentralityOptions {
  double damping = 0.85;
  DistanceMode distance = DistanceMode::Inverse;
  bool weighted_degree = false;
  bool unweighted_pagerank = false;
  std::size_t subgraph_cap = 5000;
  double tolerance = 1e-10;
  std::size_t max_iterations = 1000;
};

struct CentralityResult {
  std::vector<double> scores;
  bool converged = true;
  std::size_t iterations = 0;
};

namespace detail {

inline std::function<double(double)> length_function(const WeightedGraph& g, DistanceMode mode) {
  if (mode == DistanceMode::Inverse) return [](double w) { return 1.0 / w; };
  double w_max = 0.0;
  for (const auto& e : g.edges()) w_max = std::max(w_max, e.weight);
  const double scale = w_max * (1.0 + 1e-6);
  return [scale](double w) { return 1.0 - w / scale; };
}

inline bool nearly_equal(double a, double b) {
  return std::abs(a - b) <= 1e-12 * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

struct ShortestPaths {
  std::vector<double> dist;                        // infinity when unreachable
  std::vector<double> sigma;                       // number of shortest paths from source
  std::vector<std::vector<std::size_t>> preds;
  std::vector<std::size_t> order;                  // settled nodes, nondecreasing distance
};

// Dijkstra from one source, counting shortest paths (ties within 1e-12 relative).
inline ShortestPaths single_source(const WeightedGraph& g, std::size_t source,
                                   const std::function<double(double)>& length) {
  const std::size_t n = g.size();
  constexpr double inf = std::numeric_limits<double>::infinity();
  ShortestPaths sp{std::vector<double>(n, inf), std::vector<double>(n, 0.0),
                   std::vector<std::vector<std::size_t>>(n), {}};
  std::vector<bool> done(n, false);
  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  sp.dist[source] = 0.0;
  sp.sigma[source] = 1.0;
  heap.emplace(0.0, source);
  while (!heap.empty()) {
    auto [d, v] = heap.top();
    heap.pop();
    if (done[v] || d > sp.dist[v]) continue;
    done[v] = true;
    sp.order.push_back(v);
    for (const auto& [w, weight] : g.neighbors(v)) {
      if (done[w]) continue;
      const double nd = d + length(weight);
      if (sp.dist[w] == inf || (nd < sp.dist[w] && !nearly_equal(nd, sp.dist[w]))) {
        sp.dist[w] = nd;
        sp.sigma[w] = sp.sigma[v];
        sp.preds[w].assign(1, v);
        heap.emplace(nd, w);
      } else if (nearly_equal(nd, sp.dist[w])) {
        sp.sigma[w] += sp.sigma[v];
        sp.preds[w].push_back(v);
      }
    }
  }
  return sp;
}

}  // namespace detail

// deg(i) / (n - 1); weighted variant sums edge weights.
inline std::vector<double> degree_centrality(const WeightedGraph& g, bool weighted = false) {
  const std::size_t n = g.size();
  std::vector<double> s(n, 0.0);
  if (n <= 1) return s;
  for (std::size_t v = 0; v < n; ++v) {
    double d = 0.0;
    for (const auto& [u, w] : g.neighbors(v)) d += weighted ? w : 1.0;
    s[v] = d / static_cast<double>(n - 1);
  }
  return s;
}

// ((r-1) / sum d) * ((r-1) / (n-1)) over the reachable set of size r.
inline std::vector<double> closeness_centrality(const WeightedGraph& g,
                                                DistanceMode mode = DistanceMode::Inverse) {
  const std::size_t n = g.size();
  std::vector<double> s(n, 0.0);
  if (n <= 1) return s;
  const auto length = detail::length_function(g, mode);
  for (std::size_t v = 0; v < n; ++v) {
    const auto sp = detail::single_source(g, v, length);
    double total = 0.0;
    for (std::size_t u : sp.order) total += sp.dist[u];
    const double reached = static_cast<double>(sp.order.size()) - 1.0;
    if (reached <= 0.0 || total <= 0.0) continue;
    s[v] = (reached / total) * (reached / static_cast<double>(n - 1));
  }
  return s;
}

// Sum of 1/d(i, j) over reachable j != i.
inline std::vector<double> harmonic_centrality(const WeightedGraph& g,
                                               DistanceMode mode = DistanceMode::Inverse) {
  const std::size_t n = g.size();
  std::vector<double> s(n, 0.0);
  const auto length = detail::length_function(g, mode);
  for (std::size_t v = 0; v < n; ++v) {
    const auto sp = detail::single_source(g, v, length);
    for (std::size_t u : sp.order) {
      if (u != v && sp.dist[u] > 0.0) s[v] += 1.0 / sp.dist[u];
    }
  }
  return s;
}

// Brandes accumulation; each unordered pair counted once, no normalization.
inline std::vector<double> betweenness_centrality(const WeightedGraph& g,
                                                  DistanceMode mode = DistanceMode::Inverse) {
  const std::size_t n = g.size();
  std::vector<double> s(n, 0.0);
  const auto length = detail::length_function(g, mode);
  std::vector<double> delta(n);
  for (std::size_t src = 0; src < n; ++src) {
    const auto sp = detail::single_source(g, src, length);
    std::fill(delta.begin(), delta.end(), 0.0);
    for (auto it = sp.order.rbegin(); it != sp.order.rend(); ++it) {
      const std::size_t w = *it;
      for (std::size_t v : sp.preds[w]) delta[v] += sp.sigma[v] / sp.sigma[w] * (1.0 + delta[w]);
      if (w != src) s[w] += delta[w];
    }
  }
  for (double& x : s) x /= 2.0;
  return s;
}

inline Eigen::MatrixXd adjacency_matrix(const WeightedGraph& g) {
  const auto n = static_cast<Eigen::Index>(g.size());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (const auto& e : g.edges()) {
    a(static_cast<Eigen::Index>(e.i), static_cast<Eigen::Index>(e.j)) = e.weight;
    a(static_cast<Eigen::Index>(e.j), static_cast<Eigen::Index>(e.i)) = e.weight;
  }
  return a;
}

inline std::vector<std::vector<std::size_t>> connected_components(const WeightedGraph& g) {
  std::vector<std::vector<std::size_t>> comps;
  std::vector<bool> seen(g.size(), false);
  for (std::size_t s = 0; s < g.size(); ++s) {
    if (seen[s]) continue;
    std::vector<std::size_t> comp{s};
    seen[s] = true;
    for (std::size_t k = 0; k < comp.size(); ++k) {
      for (const auto& [u, w] : g.neighbors(comp[k])) {
        if (!seen[u]) {
          seen[u] = true;
          comp.push_back(u);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  return comps;
}

// Diagonal of exp(A): sum_k v_k[i]^2 exp(lambda_k), per connected component.
inline std::vector<double> subgraph_centrality(const WeightedGraph& g, std::size_t cap = 5000) {
  const std::size_t n = g.size();
  if (n > cap) {
    throw Error("subgraph centrality needs a dense eigendecomposition; graph has " + std::to_string(n) +
                " nodes, above the cap of " + std::to_string(cap) + " (raise it with --subgraph-cap)");
  }
  std::vector<double> s(n, 1.0);
  for (const auto& comp : connected_components(g)) {
    if (comp.size() == 1) continue;
    const auto m = static_cast<Eigen::Index>(comp.size());
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m, m);
    for (Eigen::Index r = 0; r < m; ++r) {
      for (const auto& [u, w] : g.neighbors(comp[static_cast<std::size_t>(r)])) {
        const auto c = std::lower_bound(comp.begin(), comp.end(), u) - comp.begin();
        a(r, c) = w;
      }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
    if (es.info() != Eigen::Success) throw Error("eigendecomposition failed in subgraph centrality");
    const Eigen::VectorXd ex = es.eigenvalues().array().exp();
    const Eigen::MatrixXd& vecs = es.eigenvectors();
    for (Eigen::Index r = 0; r < m; ++r) {
      s[comp[static_cast<std::size_t>(r)]] = vecs.row(r).array().square().matrix().dot(ex);
    }
  }
  return s;
}

// Power iteration on A + I (same eigenvectors as A, no oscillation on
// bipartite graphs); unit Euclidean norm, largest-magnitude component positive.
inline CentralityResult eigenvector_centrality(const WeightedGraph& g, double tolerance = 1e-10,
                                               std::size_t max_iterations = 1000) {
  const std::size_t n = g.size();
  CentralityResult r;
  if (n == 0) return r;
  std::vector<double> x(n, 1.0 / std::sqrt(static_cast<double>(n))), next(n);
  r.converged = false;
  for (std::size_t it = 0; it < max_iterations; ++it) {
    for (std::size_t v = 0; v < n; ++v) {
      double acc = x[v];
      for (const auto& [u, w] : g.neighbors(v)) acc += w * x[u];
      next[v] = acc;
    }
    double norm = 0.0;
    for (double y : next) norm += y * y;
    norm = std::sqrt(norm);
    double diff = 0.0;
    for (std::size_t v = 0; v < n; ++v) {
      next[v] /= norm;
      diff = std::max(diff, std::abs(next[v] - x[v]));
    }
    x.swap(next);
    r.iterations = it + 1;
    if (diff < tolerance) {
      r.converged = true;
      break;
    }
  }
  std::size_t arg = 0;
  for (std::size_t v = 1; v < n; ++v) {
    if (std::abs(x[v]) > std::abs(x[arg])) arg = v;
  }
  if (x[arg] < 0) {
    for (double& y : x) y = -y;
  }
  r.scores = std::move(x);
  return r;
}

namespace detail {

// x <- d P^T x + d (dangling mass) q + (1 - d) t, iterated to a fixed point.
inline CentralityResult pagerank_iteration(const WeightedGraph& g, double damping,
                                           std::span<const double> teleport,
                                           std::span<const double> dangling_target, bool weighted,
                                           double tolerance, std::size_t max_iterations) {
  const std::size_t n = g.size();
  CentralityResult r;
  if (n == 0) return r;
  if (!(damping > 0.0 && damping < 1.0)) throw Error("damping must lie in (0, 1)");
  std::vector<double> out_weight(n, 0.0);
  for (std::size_t v = 0; v < n; ++v) {
    for (const auto& [u, w] : g.neighbors(v)) out_weight[v] += weighted ? w : 1.0;
  }
  std::vector<double> x(n, 1.0 / static_cast<double>(n)), next(n);
  r.converged = false;
  for (std::size_t it = 0; it < max_iterations; ++it) {
    double dangling = 0.0;
    for (std::size_t v = 0; v < n; ++v) {
      if (out_weight[v] == 0.0) dangling += x[v];
    }
    for (std::size_t v = 0; v < n; ++v) {
      next[v] = (1.0 - damping) * teleport[v] + damping * dangling * dangling_target[v];
    }
    for (std::size_t v = 0; v < n; ++v) {
      if (out_weight[v] == 0.0) continue;
      const double share = damping * x[v] / out_weight[v];
      for (const auto& [u, w] : g.neighbors(v)) next[u] += share * (weighted ? w : 1.0);
    }
    double diff = 0.0;
    for (std::size_t v = 0; v < n; ++v) diff = std::max(diff, std::abs(next[v] - x[v]));
    x.swap(next);
    r.iterations = it + 1;
    if (diff < tolerance) {
      r.converged = true;
      break;
    }
  }
  const double total = std::accumulate(x.begin(), x.end(), 0.0);
  for (double& y : x) y /= total;
  r.scores = std::move(x);
  return r;
}

}  // namespace detail

// Weight-proportional transitions (or 1/degree when unweighted); isolated nodes
// spread their mass uniformly.
inline CentralityResult pagerank(const WeightedGraph& g, double damping = 0.85, bool weighted = true,
                                 double tolerance = 1e-10, std::size_t max_iterations = 1000) {
  const std::vector<double> uniform(g.size(), g.size() ? 1.0 / static_cast<double>(g.size()) : 0.0);
  return detail::pagerank_iteration(g, damping, uniform, uniform, weighted, tolerance, max_iterations);
}

// Teleport proportional to max(W_i, 0); uniform if every W_i <= 0. Dangling
// mass follows the teleport vector.
inline CentralityResult personalized_pagerank(const WeightedGraph& g, std::span<const double> affinity,
                                              double damping = 0.85, bool weighted = true,
                                              double tolerance = 1e-10,
                                              std::size_t max_iterations = 1000) {
  const std::size_t n = g.size();
  if (affinity.size() != n) throw Error("personalized PageRank needs one affinity per node");
  std::vector<double> t(n, 0.0);
  double z = 0.0;
  for (std::size_t v = 0; v < n; ++v) {
    t[v] = std::max(affinity[v], 0.0);
    z += t[v];
  }
  if (z > 0.0) {
    for (double& y : t) y /= z;
  } else {
    std::fill(t.begin(), t.end(), n ? 1.0 / static_cast<double>(n) : 0.0);
  }
  return detail::pagerank_iteration(g, damping, t, t, weighted, tolerance, max_iterations);
}

inline CentralityResult compute_centrality(CentralityKind kind, const WeightedGraph& g,
                                           const CentralityOptions& opt,
                                           std::span<const double> affinity = {}) {
  switch (kind) {
    case CentralityKind::Degree: return {degree_centrality(g, opt.weighted_degree)};
    case CentralityKind::Closeness: return {closeness_centrality(g, opt.distance)};
    case CentralityKind::Harmonic: return {harmonic_centrality(g, opt.distance)};
    case CentralityKind::Betweenness: return {betweenness_centrality(g, opt.distance)};
    case CentralityKind::Subgraph: return {subgraph_centrality(g, opt.subgraph_cap)};
    case CentralityKind::Eigenvector:
      return eigenvector_centrality(g, opt.tolerance, opt.max_iterations);
    case CentralityKind::PageRank:
      return pagerank(g, opt.damping, !opt.unweighted_pagerank, opt.tolerance, opt.max_iterations);
    case CentralityKind::PersonalizedPageRank:
      return personalized_pagerank(g, affinity, opt.damping, !opt.unweighted_pagerank, opt.tolerance,
                                   opt.max_iterations);
  }
  throw Error("unhandled centrality");
}

struct ScoredCandidate {
  Candidate candidate;
  double score = 0.0;
  std::size_t rank = 0;  // 1-based
};

// Descending score; ties by earlier first occurrence, then phrase text.
inline std::vector<ScoredCandidate> rank_and_select(std::span<const double> scores,
                                                    std::span<const Candidate> cands, std::size_t top_n) {
  if (scores.size() != cands.size()) throw Error("one score per candidate is required");
  std::vector<std::size_t> idx(cands.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<std::string> phrases;
  phrases.reserve(cands.size());
  for (const auto& c : cands) phrases.push_back(c.phrase());
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    if (cands[a].first_position != cands[b].first_position) {
      return cands[a].first_position < cands[b].first_position;
    }
    return phrases[a] < phrases[b];
  });
  const std::size_t k = std::min(top_n, cands.size());
  std::vector<ScoredCandidate> out;
  out.reserve(k);
  for (std::size_t r = 0; r < k; ++r) out.push_back({cands[idx[r]], scores[idx[r]], r + 1});
  return out;
}

}  // namespace gleake
