#pragma once

// Preprocessing, tagging, and noun-phrase candidate extraction.

#include <algorithm>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gleake/pos_tagger.hpp"

namespace gleake {

struct TaggedToken {
  std::string surface;
  std::string norm;
  std::string tag;
  std::size_t position = 0;
};

// A contiguous phrase matching the candidate pattern.
struct Candidate {
  std::vector<std::string> words;
  std::size_t count = 0;
  std::size_t first_position = 0;
  std::vector<std::size_t> positions;  // start index of every counted occurrence

  std::size_t n() const noexcept { return words.size(); }

  std::string phrase() const {
    std::string out;
    for (const auto& w : words) {
      if (!out.empty()) out += ' ';
      out += w;
    }
    return out;
  }
};

namespace detail {

// Length of a valid UTF-8 sequence starting at s[i], or 0 if invalid.
inline std::size_t utf8_sequence_length(std::string_view s, std::size_t i) {
  const auto lead = static_cast<unsigned char>(s[i]);
  std::size_t len = 0;
  if (lead >= 0xC2 && lead <= 0xDF) len = 2;
  else if (lead >= 0xE0 && lead <= 0xEF) len = 3;
  else if (lead >= 0xF0 && lead <= 0xF4) len = 4;
  else return 0;
  if (i + len > s.size()) return 0;
  for (std::size_t k = 1; k < len; ++k) {
    if ((static_cast<unsigned char>(s[i + k]) & 0xC0) != 0x80) return 0;
  }
  return len;
}

// Code points treated as punctuation: Latin-1 symbols and the General Punctuation block.
inline bool is_unicode_punctuation(std::string_view seq) {
  const auto b0 = static_cast<unsigned char>(seq[0]);
  if (seq.size() == 2 && b0 == 0xC2) return true;  // U+0080..U+00BF
  if (seq.size() == 2 && b0 == 0xC3) {
    const auto b1 = static_cast<unsigned char>(seq[1]);
    return b1 == 0x97 || b1 == 0xB7;  // multiplication and division signs
  }
  if (seq.size() == 3 && b0 == 0xE2) {
    const auto b1 = static_cast<unsigned char>(seq[1]);
    return b1 >= 0x80 && b1 <= 0x81;  // U+2000..U+207F
  }
  return false;
}

inline bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

}  // namespace detail

// Collapses the text to one lowercased line of letters, hyphens, and apostrophes.
// Non-ASCII letters pass through unchanged; invalid UTF-8 bytes are dropped.
inline std::string preprocess(std::string_view text) {
  std::string kept;
  kept.reserve(text.size());
  for (std::size_t i = 0; i < text.size();) {
    const char c = text[i];
    const auto uc = static_cast<unsigned char>(c);
    if (uc < 0x80) {
      if (c >= 'A' && c <= 'Z') kept += static_cast<char>(c - 'A' + 'a');
      else if ((c >= 'a' && c <= 'z') || c == '-' || c == '\'') kept += c;
      else if (detail::is_space(c)) kept += ' ';
      ++i;
      continue;
    }
    const std::size_t len = detail::utf8_sequence_length(text, i);
    if (len == 0) {
      ++i;
      continue;
    }
    const auto seq = text.substr(i, len);
    if (seq == "\xC2\xA0") kept += ' ';  // no-break space
    else if (!detail::is_unicode_punctuation(seq)) kept.append(seq);
    i += len;
  }

  std::string out;
  out.reserve(kept.size());
  for (char c : kept) {
    if (c == ' ') {
      if (!out.empty() && out.back() != ' ') out += ' ';
    } else {
      out += c;
    }
  }
  if (!out.empty() && out.back() == ' ') out.pop_back();
  return out;
}

inline std::vector<std::string> split_whitespace(std::string_view text) {
  std::vector<std::string> words;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && detail::is_space(text[i])) ++i;
    std::size_t j = i;
    while (j < text.size() && !detail::is_space(text[j])) ++j;
    if (j > i) words.emplace_back(text.substr(i, j - i));
    i = j;
  }
  return words;
}

inline std::vector<TaggedToken> tokenize_and_tag(std::string_view text, const Tagger& tagger) {
  const auto words = split_whitespace(text);
  const auto tags = tagger.tag(words);
  if (tags.size() != words.size()) throw Error("tagger returned a tag count different from the word count");
  std::vector<TaggedToken> tokens;
  tokens.reserve(words.size());
  for (std::size_t i = 0; i < words.size(); ++i) {
    std::string norm = words[i];
    std::transform(norm.begin(), norm.end(), norm.begin(),
                   [](unsigned char c) { return c >= 'A' && c <= 'Z' ? c - 'A' + 'a' : c; });
    tokens.push_back({words[i], std::move(norm), tags[i], i});
  }
  return tokens;
}

inline std::vector<std::string> norms_of(std::span<const TaggedToken> tokens) {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(t.norm);
  return out;
}

// Tags that may close a candidate: NN.* and VBG.
inline bool is_head_tag(std::string_view tag) { return tag.starts_with("NN") || tag == "VBG"; }

// Tags that may only appear before the head: JJ.* and VBN.
inline bool is_modifier_tag(std::string_view tag) { return tag.starts_with("JJ") || tag == "VBN"; }

struct CandidateOptions {
  // Also report every matching sub-span, not only the maximal one.
  bool emit_submatches = false;
};

// Finds spans matching (NN.*|JJ.*|VBN|VBG)*(NN.*|VBG).
//
// Within a maximal run of pattern tokens every matching span ends on a head tag,
// so the unique maximal match runs from the start of the run to its last head.
inline std::vector<Candidate> extract_candidates(std::span<const TaggedToken> tokens,
                                                 const CandidateOptions& options = {}) {
  std::vector<Candidate> out;
  std::map<std::vector<std::string>, std::size_t> index;

  auto record = [&](std::size_t begin, std::size_t end) {
    std::vector<std::string> words;
    for (std::size_t k = begin; k < end; ++k) words.push_back(tokens[k].norm);
    auto [it, inserted] = index.try_emplace(words, out.size());
    if (inserted) out.push_back({std::move(words), 0, tokens[begin].position, {}});
    auto& cand = out[it->second];
    ++cand.count;
    cand.first_position = std::min(cand.first_position, tokens[begin].position);
    cand.positions.push_back(tokens[begin].position);
  };

  std::size_t i = 0;
  while (i < tokens.size()) {
    if (!is_head_tag(tokens[i].tag) && !is_modifier_tag(tokens[i].tag)) {
      ++i;
      continue;
    }
    std::size_t run_end = i;
    while (run_end < tokens.size() &&
           (is_head_tag(tokens[run_end].tag) || is_modifier_tag(tokens[run_end].tag))) {
      ++run_end;
    }
    if (options.emit_submatches) {
      for (std::size_t b = i; b < run_end; ++b) {
        for (std::size_t e = b + 1; e <= run_end; ++e) {
          if (is_head_tag(tokens[e - 1].tag)) record(b, e);
        }
      }
    } else {
      std::size_t last_head = run_end;
      for (std::size_t k = run_end; k > i; --k) {
        if (is_head_tag(tokens[k - 1].tag)) {
          last_head = k - 1;
          break;
        }
      }
      if (last_head != run_end) record(i, last_head + 1);
    }
    i = run_end;
  }

  for (auto& c : out) std::sort(c.positions.begin(), c.positions.end());
  std::stable_sort(out.begin(), out.end(), [](const Candidate& a, const Candidate& b) {
    return a.first_position < b.first_position;
  });
  return out;
}

// Occurrence threshold below which an n-word candidate is an outlier.
inline double outlier_threshold(double alpha, std::size_t n) {
  const double m = static_cast<double>(n) - 1.0;
  return alpha / (m * m + 1.0);
}

// Drops every candidate with count < alpha / ((n-1)^2 + 1).
inline std::vector<Candidate> filter_outliers(std::span<const Candidate> cands, double alpha) {
  if (!(alpha > 0.0)) throw Error("alpha must be positive");
  std::vector<Candidate> kept;
  for (const auto& c : cands) {
    if (static_cast<double>(c.count) < outlier_threshold(alpha, c.n())) continue;
    kept.push_back(c);
  }
  return kept;
}

}  // namespace gleake
