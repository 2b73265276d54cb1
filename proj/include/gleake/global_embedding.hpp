#pragma once

// Pre-trained ("global") phrase and document vectors.

#include <algorithm>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "gleake/corpus_io.hpp"
#include "gleake/dense_vector.hpp"
#include "gleake/text_pipeline.hpp"

namespace gleake {

// Maps a whole word sequence to one vector (sentence/document encoders).
using MultiWordEncoder = std::function<DenseVector(std::span<const std::string>)>;

class GlobalMapper {
 public:
  enum class Kind { WordSum, External };

  static GlobalMapper word_sum(std::shared_ptr<const VectorTable> table) {
    if (!table || table->dimension() == 0) throw Error("word-sum mapper needs a loaded vector table");
    GlobalMapper m;
    m.kind_ = Kind::WordSum;
    m.dimension_ = table->dimension();
    m.table_ = std::move(table);
    return m;
  }

  static GlobalMapper external(MultiWordEncoder encoder, std::size_t dimension) {
    if (!encoder || dimension == 0) throw Error("external mapper needs an encoder and a positive dimension");
    GlobalMapper m;
    m.kind_ = Kind::External;
    m.dimension_ = dimension;
    m.encoder_ = std::move(encoder);
    return m;
  }

  Kind kind() const noexcept { return kind_; }
  std::size_t dimension() const noexcept { return dimension_; }
  const VectorTable* table() const noexcept { return table_.get(); }

  struct Mapped {
    DenseVector vector;
    bool covered = false;  // false iff no word was in vocabulary
  };

  Mapped map(std::span<const std::string> words) const {
    if (kind_ == Kind::External) {
      DenseVector v = encoder_(words);
      if (v.size() != dimension_) {
        throw Error("external encoder returned dimension " + std::to_string(v.size()) +
                    ", expected " + std::to_string(dimension_));
      }
      const bool covered = !v.is_zero();
      return {std::move(v), covered};
    }
    Mapped out{DenseVector(dimension_), false};
    for (const auto& w : words) {
      if (const auto* wv = table_->find(w)) {
        out.vector += *wv;
        out.covered = true;
      }
    }
    return out;
  }

 private:
  Kind kind_ = Kind::WordSum;
  std::size_t dimension_ = 0;
  std::shared_ptr<const VectorTable> table_;
  MultiWordEncoder encoder_;
};

inline GlobalMapper::Mapped phrase_global_vector(const GlobalMapper& mapper, const Candidate& candidate) {
  return mapper.map(candidate.words);
}

// First min(N_repr, len) tokens of the document.
inline DenseVector document_global_vector(const GlobalMapper& mapper,
                                          std::span<const TaggedToken> tokens, std::size_t n_repr) {
  if (n_repr == 0) throw Error("N_repr must be at least 1");
  const std::size_t k = std::min(n_repr, tokens.size());
  std::vector<std::string> words;
  words.reserve(k);
  for (std::size_t i = 0; i < k; ++i) words.push_back(tokens[i].norm);
  return mapper.map(words).vector;
}

struct CoverageStats {
  double oov_fraction = 0.0;
  std::vector<std::string> fully_oov;
};

inline CoverageStats global_oov_report(const GlobalMapper& mapper, std::span<const Candidate> cands) {
  CoverageStats s;
  if (cands.empty()) return s;
  for (const auto& c : cands) {
    if (!mapper.map(c.words).covered) s.fully_oov.push_back(c.phrase());
  }
  s.oov_fraction = static_cast<double>(s.fully_oov.size()) / static_cast<double>(cands.size());
  return s;
}

}  // namespace gleake
