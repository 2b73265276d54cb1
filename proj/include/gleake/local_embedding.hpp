#pragma once

// Per-document ("local") word embeddings: skip-gram with negative sampling and
// GloVe, both trained on the tokens of a single document.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gleake/dense_vector.hpp"
#include "gleake/error.hpp"
#include "gleake/text_pipeline.hpp"

namespace gleake {

enum class LocalAlgorithm { SkipGram, Glove };

inline std::string_view to_string(LocalAlgorithm a) {
  return a == LocalAlgorithm::SkipGram ? "skipgram" : "glove";
}

inline LocalAlgorithm parse_local_algorithm(std::string_view s) {
  if (s == "skipgram" || s == "word2vec") return LocalAlgorithm::SkipGram;
  if (s == "glove") return LocalAlgorithm::Glove;
  throw Error("unknown local model '" + std::string(s) + "' (expected skipgram or glove)");
}

struct TrainingParams {
  std::size_t dimension = 100;
  std::size_t window = 5;
  std::size_t negative = 5;  // skip-gram only
  std::size_t epochs = 200;
  double learning_rate = 0.025;
  double glove_x_max = 10.0;
  double glove_alpha = 0.75;
};

struct TrainingMeta {
  TrainingParams params;
  std::uint64_t seed = 0;
  std::vector<double> epoch_loss;  // one entry per epoch
  std::vector<std::string> warnings;
};

struct LocalModel {
  std::size_t dimension = 0;
  LocalAlgorithm algorithm = LocalAlgorithm::SkipGram;
  std::unordered_map<std::string, DenseVector> vectors;
  TrainingMeta training_meta;

  const DenseVector* find(const std::string& word) const {
    auto it = vectors.find(word);
    return it == vectors.end() ? nullptr : &it->second;
  }
};

namespace detail {

// Portable uniform draw in [0, 1) from a 64-bit engine.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

struct Vocabulary {
  std::vector<std::string> words;           // first-occurrence order
  std::vector<std::size_t> counts;
  std::vector<std::size_t> ids;             // token stream as ids
};

inline Vocabulary build_vocabulary(std::span<const std::string> tokens) {
  Vocabulary v;
  std::unordered_map<std::string, std::size_t> index;
  v.ids.reserve(tokens.size());
  for (const auto& t : tokens) {
    auto [it, inserted] = index.try_emplace(t, v.words.size());
    if (inserted) {
      v.words.push_back(t);
      v.counts.push_back(0);
    }
    ++v.counts[it->second];
    v.ids.push_back(it->second);
  }
  return v;
}

inline double sigmoid(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

// log(1 + exp(-x)) without overflow.
inline double softplus_neg(double x) {
  return x > 0 ? std::log1p(std::exp(-x)) : -x + std::log1p(std::exp(x));
}

inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace detail

// Negative-sampling loss for one (center, context) pair:
//   L = -log s(u_ctx . v) - sum_k log s(-u_k . v)
// Gradients are written to the output spans (grad_negatives is k * dim, row-major).
inline double sgns_loss_and_gradient(std::span<const double> center,
                                     std::span<const double> context,
                                     std::span<const std::span<const double>> negatives,
                                     std::span<double> grad_center, std::span<double> grad_context,
                                     std::span<double> grad_negatives) {
  const std::size_t dim = center.size();
  std::fill(grad_center.begin(), grad_center.end(), 0.0);
  const double pos = detail::dot(context, center);
  double loss = detail::softplus_neg(pos);
  const double g_pos = detail::sigmoid(pos) - 1.0;
  for (std::size_t d = 0; d < dim; ++d) {
    grad_center[d] += g_pos * context[d];
    grad_context[d] = g_pos * center[d];
  }
  for (std::size_t k = 0; k < negatives.size(); ++k) {
    const auto& u = negatives[k];
    const double s = detail::dot(u, center);
    loss += detail::softplus_neg(-s);
    const double g = detail::sigmoid(s);
    for (std::size_t d = 0; d < dim; ++d) {
      grad_center[d] += g * u[d];
      grad_negatives[k * dim + d] = g * center[d];
    }
  }
  return loss;
}

namespace detail {

inline void warn_if_short(std::size_t tokens, const TrainingParams& p, TrainingMeta& meta) {
  if (tokens < p.window + 1) {
    meta.warnings.push_back("document has " + std::to_string(tokens) +
                            " tokens, fewer than window+1; training on truncated windows");
  }
}

inline LocalModel make_model(const Vocabulary& vocab, std::span<const double> vectors,
                             std::size_t dim, LocalAlgorithm algo, TrainingMeta meta) {
  LocalModel m;
  m.dimension = dim;
  m.algorithm = algo;
  m.training_meta = std::move(meta);
  for (std::size_t w = 0; w < vocab.words.size(); ++w) {
    m.vectors.emplace(vocab.words[w],
                      DenseVector(std::vector<double>(vectors.begin() + static_cast<std::ptrdiff_t>(w * dim),
                                                      vectors.begin() + static_cast<std::ptrdiff_t>((w + 1) * dim))));
  }
  return m;
}

inline LocalModel train_skipgram(const Vocabulary& vocab, const TrainingParams& p,
                                 std::uint64_t seed, TrainingMeta meta) {
  const std::size_t dim = p.dimension;
  const std::size_t V = vocab.words.size();
  std::mt19937_64 rng(seed);

  std::vector<double> in(V * dim), out(V * dim, 0.0);
  for (double& x : in) x = (uniform01(rng) - 0.5) / static_cast<double>(dim);

  // Unigram^0.75 cumulative distribution for negative draws.
  std::vector<double> cdf(V);
  double acc = 0.0;
  for (std::size_t w = 0; w < V; ++w) {
    acc += std::pow(static_cast<double>(vocab.counts[w]), 0.75);
    cdf[w] = acc;
  }
  auto draw_negative = [&]() {
    const double r = uniform01(rng) * acc;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), r);
    return static_cast<std::size_t>(std::min<std::ptrdiff_t>(it - cdf.begin(), static_cast<std::ptrdiff_t>(V) - 1));
  };

  const auto& ids = vocab.ids;
  const std::size_t T = ids.size();
  const double total_steps = static_cast<double>(p.epochs * T);
  std::vector<double> g_center(dim), g_context(dim), g_neg(p.negative * dim);
  std::vector<std::size_t> neg_ids;
  std::vector<std::span<const double>> neg_rows;

  for (std::size_t epoch = 0; epoch < p.epochs; ++epoch) {
    double loss_sum = 0.0;
    std::size_t pairs = 0;
    for (std::size_t pos = 0; pos < T; ++pos) {
      const double progress = static_cast<double>(epoch * T + pos) / total_steps;
      const double lr = p.learning_rate * std::max(1e-4, 1.0 - progress);
      const std::size_t shrink = p.window > 0 ? rng() % p.window : 0;
      const std::size_t span = p.window - shrink;
      const std::size_t lo = pos >= span ? pos - span : 0;
      const std::size_t hi = std::min(T - 1, pos + span);
      const std::size_t center = ids[pos];
      for (std::size_t cpos = lo; cpos <= hi; ++cpos) {
        if (cpos == pos) continue;
        const std::size_t context = ids[cpos];
        neg_ids.clear();
        neg_rows.clear();
        for (std::size_t k = 0; k < p.negative; ++k) {
          const std::size_t n = draw_negative();
          if (n == context) continue;
          neg_ids.push_back(n);
        }
        for (std::size_t n : neg_ids) neg_rows.emplace_back(&out[n * dim], dim);
        std::span<double> v(&in[center * dim], dim);
        std::span<double> u(&out[context * dim], dim);
        loss_sum += sgns_loss_and_gradient(v, u, neg_rows, g_center, g_context,
                                           std::span<double>(g_neg).first(neg_ids.size() * dim));
        ++pairs;
        for (std::size_t d = 0; d < dim; ++d) u[d] -= lr * g_context[d];
        for (std::size_t k = 0; k < neg_ids.size(); ++k) {
          double* row = &out[neg_ids[k] * dim];
          for (std::size_t d = 0; d < dim; ++d) row[d] -= lr * g_neg[k * dim + d];
        }
        for (std::size_t d = 0; d < dim; ++d) v[d] -= lr * g_center[d];
      }
    }
    meta.epoch_loss.push_back(pairs > 0 ? loss_sum / static_cast<double>(pairs) : 0.0);
  }
  return make_model(vocab, in, dim, LocalAlgorithm::SkipGram, std::move(meta));
}

struct Cooccurrence {
  std::size_t i, j;
  double x;
};

// Symmetric counts weighted by 1/distance, sorted by (i, j).
inline std::vector<Cooccurrence> cooccurrences(const Vocabulary& vocab, std::size_t window) {
  std::unordered_map<std::uint64_t, double> acc;
  const auto& ids = vocab.ids;
  for (std::size_t pos = 0; pos < ids.size(); ++pos) {
    for (std::size_t off = 1; off <= window && pos + off < ids.size(); ++off) {
      const double w = 1.0 / static_cast<double>(off);
      const std::uint64_t a = ids[pos], b = ids[pos + off];
      acc[(a << 32) | b] += w;
      acc[(b << 32) | a] += w;
    }
  }
  std::vector<Cooccurrence> out;
  out.reserve(acc.size());
  for (const auto& [key, x] : acc) out.push_back({key >> 32, key & 0xffffffffu, x});
  std::sort(out.begin(), out.end(), [](const Cooccurrence& a, const Cooccurrence& b) {
    return a.i != b.i ? a.i < b.i : a.j < b.j;
  });
  return out;
}

struct GloveParams {
  std::vector<double> w, wt, b, bt;
};

inline double glove_weight(double x, const TrainingParams& p) {
  return x < p.glove_x_max ? std::pow(x / p.glove_x_max, p.glove_alpha) : 1.0;
}

inline double glove_loss(const GloveParams& g, const std::vector<Cooccurrence>& co,
                         const TrainingParams& p) {
  const std::size_t dim = p.dimension;
  double j = 0.0;
  for (const auto& c : co) {
    const double diff = dot(std::span<const double>(&g.w[c.i * dim], dim),
                            std::span<const double>(&g.wt[c.j * dim], dim)) +
                        g.b[c.i] + g.bt[c.j] - std::log(c.x);
    j += 0.5 * glove_weight(c.x, p) * diff * diff;
  }
  return j;
}

// AdaGrad passes over shuffled co-occurrence entries. A pass that raises the
// full objective is rolled back and the step size halved, so the recorded
// per-epoch loss never increases.
inline LocalModel train_glove(const Vocabulary& vocab, const TrainingParams& p,
                              std::uint64_t seed, TrainingMeta meta) {
  const std::size_t dim = p.dimension;
  const std::size_t V = vocab.words.size();
  std::mt19937_64 rng(seed);
  auto co = cooccurrences(vocab, p.window);

  GloveParams g;
  g.w.resize(V * dim);
  g.wt.resize(V * dim);
  g.b.assign(V, 0.0);
  g.bt.assign(V, 0.0);
  for (double& x : g.w) x = (uniform01(rng) - 0.5) / static_cast<double>(dim);
  for (double& x : g.wt) x = (uniform01(rng) - 0.5) / static_cast<double>(dim);
  GloveParams sq{std::vector<double>(V * dim, 1.0), std::vector<double>(V * dim, 1.0),
                 std::vector<double>(V, 1.0), std::vector<double>(V, 1.0)};

  double eta = p.learning_rate;
  double current = glove_loss(g, co, p);
  std::vector<std::size_t> order(co.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::vector<double> grad_w(dim), grad_wt(dim);

  for (std::size_t epoch = 0; epoch < p.epochs; ++epoch) {
    for (std::size_t k = order.size(); k > 1; --k) std::swap(order[k - 1], order[rng() % k]);
    const GloveParams saved = g, saved_sq = sq;
    for (std::size_t k : order) {
      const auto& c = co[k];
      double* wi = &g.w[c.i * dim];
      double* wj = &g.wt[c.j * dim];
      const double diff = dot(std::span<const double>(wi, dim), std::span<const double>(wj, dim)) +
                          g.b[c.i] + g.bt[c.j] - std::log(c.x);
      const double fdiff = glove_weight(c.x, p) * diff;
      for (std::size_t d = 0; d < dim; ++d) {
        grad_w[d] = fdiff * wj[d];
        grad_wt[d] = fdiff * wi[d];
      }
      double* sqi = &sq.w[c.i * dim];
      double* sqj = &sq.wt[c.j * dim];
      for (std::size_t d = 0; d < dim; ++d) {
        wi[d] -= eta * grad_w[d] / std::sqrt(sqi[d]);
        wj[d] -= eta * grad_wt[d] / std::sqrt(sqj[d]);
        sqi[d] += grad_w[d] * grad_w[d];
        sqj[d] += grad_wt[d] * grad_wt[d];
      }
      g.b[c.i] -= eta * fdiff / std::sqrt(sq.b[c.i]);
      g.bt[c.j] -= eta * fdiff / std::sqrt(sq.bt[c.j]);
      sq.b[c.i] += fdiff * fdiff;
      sq.bt[c.j] += fdiff * fdiff;
    }
    const double next = glove_loss(g, co, p);
    if (next > current || !std::isfinite(next)) {
      g = saved;
      sq = saved_sq;
      eta *= 0.5;
    } else {
      current = next;
    }
    meta.epoch_loss.push_back(current);
  }

  std::vector<double> combined(V * dim);
  for (std::size_t k = 0; k < combined.size(); ++k) combined[k] = g.w[k] + g.wt[k];
  return make_model(vocab, combined, dim, LocalAlgorithm::Glove, std::move(meta));
}

}  // namespace detail

inline LocalModel train_local(std::span<const std::string> words, LocalAlgorithm algorithm,
                              const TrainingParams& params, std::uint64_t seed) {
  if (words.empty()) throw Error("cannot train a local model on an empty document");
  if (params.dimension == 0) throw Error("local embedding dimension must be positive");
  const auto vocab = detail::build_vocabulary(words);
  TrainingMeta meta{params, seed, {}, {}};
  detail::warn_if_short(words.size(), params, meta);
  return algorithm == LocalAlgorithm::SkipGram ? detail::train_skipgram(vocab, params, seed, std::move(meta))
                                               : detail::train_glove(vocab, params, seed, std::move(meta));
}

inline LocalModel train_local(std::span<const TaggedToken> tokens, LocalAlgorithm algorithm,
                              const TrainingParams& params, std::uint64_t seed) {
  const auto words = norms_of(tokens);
  return train_local(std::span<const std::string>(words), algorithm, params, seed);
}

// Sum of the word vectors; words missing from the model contribute zero.
inline DenseVector phrase_local_vector(const LocalModel& model, std::span<const std::string> words) {
  DenseVector v(model.dimension);
  for (const auto& w : words) {
    if (const auto* wv = model.find(w)) v += *wv;
  }
  return v;
}

inline DenseVector phrase_local_vector(const LocalModel& model, const Candidate& candidate) {
  return phrase_local_vector(model, std::span<const std::string>(candidate.words));
}

// Sum over the first min(M, len) tokens.
inline DenseVector document_local_vector(const LocalModel& model,
                                         std::span<const TaggedToken> tokens, std::size_t m) {
  if (m == 0) throw Error("M must be at least 1");
  DenseVector v(model.dimension);
  const std::size_t k = std::min(m, tokens.size());
  for (std::size_t i = 0; i < k; ++i) {
    if (const auto* wv = model.find(tokens[i].norm)) v += *wv;
  }
  return v;
}

}  // namespace gleake
