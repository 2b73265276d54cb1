#pragma once

// The full hyperparameter record and its key=value text form.
//
// Grammar: one record per line, whitespace-separated key=value pairs, '#'
// starts a comment, blank lines are ignored. Keys match the CLI flag names
// without the leading dashes, e.g.
//
//   method=gleake centrality=eigenvector function=6 local-model=glove top-n=15

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "gleake/centrality.hpp"
#include "gleake/corpus_io.hpp"
#include "gleake/error.hpp"
#include "gleake/local_embedding.hpp"

namespace gleake {

enum class Method { Gleake, TfidfSum, TfidfMean, Cooccurrence };

inline std::string_view to_string(Method m) {
  switch (m) {
    case Method::Gleake: return "gleake";
    case Method::TfidfSum: return "tfidf-sum";
    case Method::TfidfMean: return "tfidf-mean";
    case Method::Cooccurrence: return "cooccurrence";
  }
  return "?";
}

inline Method parse_method(std::string_view s) {
  for (auto m : {Method::Gleake, Method::TfidfSum, Method::TfidfMean, Method::Cooccurrence}) {
    if (s == to_string(m)) return m;
  }
  throw Error("unknown method '" + std::string(s) + "' (expected gleake, tfidf-sum, tfidf-mean, cooccurrence)");
}

enum class MatchMode { Exact, Stemmed };

struct ExtractionConfig {
  Method method = Method::Gleake;
  double alpha = 7.0;
  std::size_t local_repr_words = 10;    // M
  std::size_t global_repr_words = 250;  // N_repr
  int function_id = 6;
  CentralityKind centrality = CentralityKind::Eigenvector;
  LocalAlgorithm local_algorithm = LocalAlgorithm::Glove;
  TrainingParams training;
  std::string global_model_path;
  std::size_t global_limit = 0;  // 0: no cap
  std::size_t top_n = 15;
  double damping = 0.85;
  std::uint64_t seed = 1;
  bool emit_submatches = false;
  DistanceMode distance = DistanceMode::Inverse;
  bool weighted_degree = false;
  bool unweighted_pagerank = false;
  std::size_t subgraph_cap = 5000;
  std::size_t cooccurrence_window = 10;
  MatchMode match = MatchMode::Stemmed;
  bool drop_absent_gold = false;

  CentralityOptions centrality_options() const {
    CentralityOptions o;
    o.damping = damping;
    o.distance = distance;
    o.weighted_degree = weighted_degree;
    o.unweighted_pagerank = unweighted_pagerank;
    o.subgraph_cap = subgraph_cap;
    return o;
  }

  void validate() const {
    if (!(alpha > 0.0)) throw Error("alpha must be positive");
    if (local_repr_words == 0) throw Error("m must be at least 1");
    if (global_repr_words == 0) throw Error("n-repr must be at least 1");
    if (!valid_function_id(function_id)) throw Error("function must be in 1..8");
    if (!(damping > 0.0 && damping < 1.0)) throw Error("damping must lie in (0, 1)");
    if (training.dimension == 0) throw Error("local-dim must be positive");
    if (training.epochs == 0) throw Error("local-epochs must be positive");
    if (cooccurrence_window == 0) throw Error("cooc-window must be at least 1");
  }
};

namespace detail {

inline bool parse_bool(std::string_view key, std::string_view v) {
  if (v == "1" || v == "true" || v == "yes") return true;
  if (v == "0" || v == "false" || v == "no") return false;
  throw Error("config key '" + std::string(key) + "' expects a boolean, got '" + std::string(v) + "'");
}

inline double parse_real(std::string_view key, std::string_view v) {
  if (auto d = parse_double(v)) return *d;
  throw Error("config key '" + std::string(key) + "' expects a number, got '" + std::string(v) + "'");
}

inline std::size_t parse_count(std::string_view key, std::string_view v) {
  if (auto d = parse_size(v)) return *d;
  throw Error("config key '" + std::string(key) + "' expects a non-negative integer, got '" + std::string(v) + "'");
}

}  // namespace detail

// Applies one key=value setting; unknown keys are errors.
inline void apply_setting(ExtractionConfig& c, std::string_view key, std::string_view value) {
  using namespace detail;
  if (key == "method") c.method = parse_method(value);
  else if (key == "alpha") c.alpha = parse_real(key, value);
  else if (key == "m") c.local_repr_words = parse_count(key, value);
  else if (key == "n-repr") c.global_repr_words = parse_count(key, value);
  else if (key == "function") c.function_id = static_cast<int>(parse_count(key, value));
  else if (key == "centrality") c.centrality = parse_centrality(value);
  else if (key == "local-model") c.local_algorithm = parse_local_algorithm(value);
  else if (key == "local-dim") c.training.dimension = parse_count(key, value);
  else if (key == "local-window") c.training.window = parse_count(key, value);
  else if (key == "local-epochs") c.training.epochs = parse_count(key, value);
  else if (key == "local-negative") c.training.negative = parse_count(key, value);
  else if (key == "learning-rate") c.training.learning_rate = parse_real(key, value);
  else if (key == "global-vectors") c.global_model_path = std::string(value);
  else if (key == "global-limit") c.global_limit = parse_count(key, value);
  else if (key == "top-n") c.top_n = parse_count(key, value);
  else if (key == "damping") c.damping = parse_real(key, value);
  else if (key == "seed") c.seed = parse_count(key, value);
  else if (key == "submatches") c.emit_submatches = parse_bool(key, value);
  else if (key == "distance") c.distance = parse_distance_mode(value);
  else if (key == "weighted-degree") c.weighted_degree = parse_bool(key, value);
  else if (key == "unweighted-pr") c.unweighted_pagerank = parse_bool(key, value);
  else if (key == "subgraph-cap") c.subgraph_cap = parse_count(key, value);
  else if (key == "cooc-window") c.cooccurrence_window = parse_count(key, value);
  else if (key == "match") {
    if (value == "exact") c.match = MatchMode::Exact;
    else if (value == "stemmed") c.match = MatchMode::Stemmed;
    else throw Error("match must be exact or stemmed");
  } else if (key == "drop-absent-gold") c.drop_absent_gold = parse_bool(key, value);
  else throw Error("unknown config key '" + std::string(key) + "'");
}

// Parses one record line on top of `base`.
inline ExtractionConfig parse_config_line(std::string_view line, ExtractionConfig base = {}) {
  if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
  for (auto token : detail::split_ws(line)) {
    const auto eq = token.find('=');
    if (eq == std::string_view::npos || eq == 0) {
      throw Error("config token '" + std::string(token) + "' is not key=value");
    }
    apply_setting(base, token.substr(0, eq), token.substr(eq + 1));
  }
  base.validate();
  return base;
}

inline std::vector<ExtractionConfig> load_config_file(const std::filesystem::path& path,
                                                      const ExtractionConfig& base = {}) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read config file '" + path.string() + "'");
  std::vector<ExtractionConfig> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto body = std::string_view(line).substr(0, line.find('#'));
    if (detail::split_ws(body).empty()) continue;
    try {
      out.push_back(parse_config_line(line, base));
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(path.string(), line_no, e.what());
    }
  }
  return out;
}

// Canonical record with every key, parseable by parse_config_line.
inline std::string to_string(const ExtractionConfig& c) {
  std::ostringstream o;
  o.precision(17);
  o << "method=" << to_string(c.method) << " alpha=" << c.alpha << " m=" << c.local_repr_words
    << " n-repr=" << c.global_repr_words << " function=" << c.function_id
    << " centrality=" << to_string(c.centrality) << " local-model=" << to_string(c.local_algorithm)
    << " local-dim=" << c.training.dimension << " local-window=" << c.training.window
    << " local-epochs=" << c.training.epochs << " local-negative=" << c.training.negative
    << " learning-rate=" << c.training.learning_rate;
  if (!c.global_model_path.empty()) o << " global-vectors=" << c.global_model_path;
  o << " global-limit=" << c.global_limit << " top-n=" << c.top_n << " damping=" << c.damping
    << " seed=" << c.seed << " submatches=" << (c.emit_submatches ? "true" : "false")
    << " distance=" << to_string(c.distance) << " weighted-degree=" << (c.weighted_degree ? "true" : "false")
    << " unweighted-pr=" << (c.unweighted_pagerank ? "true" : "false") << " subgraph-cap=" << c.subgraph_cap
    << " cooc-window=" << c.cooccurrence_window << " match=" << (c.match == MatchMode::Exact ? "exact" : "stemmed")
    << " drop-absent-gold=" << (c.drop_absent_gold ? "true" : "false");
  return o.str();
}

}  // namespace gleake
