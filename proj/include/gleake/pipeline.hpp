#pragma once

// End-to-end extraction for one document:
// preprocess -> tag -> candidates -> outlier filter -> local model ->
// dual vectors -> graph -> centrality -> top-N.

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "gleake/centrality.hpp"
#include "gleake/config.hpp"
#include "gleake/global_embedding.hpp"
#include "gleake/graph_engine.hpp"
#include "gleake/local_embedding.hpp"
#include "gleake/pos_tagger.hpp"
#include "gleake/text_pipeline.hpp"

namespace gleake {

// Error raised inside a named pipeline stage.
class StageError : public Error {
 public:
  StageError(std::string stage, const std::string& what)
      : Error("stage '" + stage + "': " + what), stage_(std::move(stage)) {}
  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

namespace detail {

template <typename F>
auto run_stage(const char* stage, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(stage, e.what());
  }
}

}  // namespace detail

struct PreparedDocument {
  std::string id;
  std::vector<TaggedToken> tokens;
  std::vector<Candidate> raw_candidates;  // before the outlier filter
  std::vector<Candidate> candidates;
};

inline PreparedDocument prepare_document(std::string id, std::string_view text, const Tagger& tagger,
                                         const ExtractionConfig& config) {
  PreparedDocument doc;
  doc.id = std::move(id);
  const auto clean = detail::run_stage("preprocess", [&] { return preprocess(text); });
  doc.tokens = detail::run_stage("tag", [&] { return tokenize_and_tag(clean, tagger); });
  doc.raw_candidates = detail::run_stage("candidates", [&] {
    return extract_candidates(doc.tokens, CandidateOptions{config.emit_submatches});
  });
  doc.candidates = detail::run_stage("outlier-filter", [&] {
    return filter_outliers(doc.raw_candidates, config.alpha);
  });
  return doc;
}

struct EmbeddedDocument {
  std::vector<DualVector> vectors;  // one per candidate
  DualVector doc;
  std::vector<std::string> warnings;
};

inline EmbeddedDocument embed_document(const PreparedDocument& prepared, const GlobalMapper& mapper,
                                       const ExtractionConfig& config) {
  EmbeddedDocument out;
  if (prepared.candidates.empty()) return out;
  const auto model = detail::run_stage("local-embedding", [&] {
    return train_local(prepared.tokens, config.local_algorithm, config.training, config.seed);
  });
  out.warnings = model.training_meta.warnings;
  detail::run_stage("dual-vectors", [&] {
    out.vectors.reserve(prepared.candidates.size());
    for (const auto& c : prepared.candidates) {
      out.vectors.push_back({phrase_local_vector(model, c), phrase_global_vector(mapper, c).vector});
    }
    out.doc.local = document_local_vector(model, prepared.tokens, config.local_repr_words);
    out.doc.global = document_global_vector(mapper, prepared.tokens, config.global_repr_words);
    return 0;
  });
  return out;
}

struct Extraction {
  std::vector<ScoredCandidate> keyphrases;
  KeyGraph graph;
  bool converged = true;
  std::vector<std::string> warnings;
};

// Scores every candidate and keeps the best `top_n`.
inline Extraction rank_document(const PreparedDocument& prepared, const EmbeddedDocument& embedded,
                                const ExtractionConfig& config, std::size_t top_n) {
  Extraction ex;
  ex.warnings = embedded.warnings;
  ex.graph = detail::run_stage("graph", [&] {
    return build_graph(prepared.candidates, embedded.vectors, embedded.doc, config.function_id);
  });
  const auto result = detail::run_stage("centrality", [&] {
    std::vector<double> affinity;
    if (config.centrality == CentralityKind::PersonalizedPageRank) {
      affinity = document_affinity(embedded.vectors, embedded.doc);
    }
    return compute_centrality(config.centrality, ex.graph.graph, config.centrality_options(), affinity);
  });
  ex.converged = result.converged;
  if (!result.converged) {
    ex.warnings.push_back(std::string(to_string(config.centrality)) + " did not converge in " +
                          std::to_string(result.iterations) + " iterations");
  }
  ex.keyphrases = rank_and_select(result.scores, prepared.candidates, top_n);
  return ex;
}

inline Extraction extract_keyphrases(std::string id, std::string_view text, const Tagger& tagger,
                                     const GlobalMapper& mapper, const ExtractionConfig& config) {
  config.validate();
  const auto prepared = prepare_document(std::move(id), text, tagger, config);
  const auto embedded = embed_document(prepared, mapper, config);
  return rank_document(prepared, embedded, config, config.top_n);
}

inline std::vector<ReportRow> to_report_rows(const std::vector<ScoredCandidate>& ranked) {
  std::vector<ReportRow> rows;
  rows.reserve(ranked.size());
  for (const auto& s : ranked) rows.push_back({s.rank, s.candidate.phrase(), s.score});
  return rows;
}

}  // namespace gleake
