#pragma once

// Dataset, gold-keyphrase, and word-vector loaders plus keyphrase report I/O.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "gleake/dense_vector.hpp"
#include "gleake/error.hpp"

namespace gleake {

struct RawDocument {
  std::string id;
  std::string text;
};

struct GoldKeySet {
  std::string doc_id;
  std::vector<std::string> phrases;
};

struct DatasetEntry {
  RawDocument document;
  GoldKeySet gold;
};

struct Dataset {
  std::vector<DatasetEntry> entries;  // sorted by id
  std::vector<std::string> warnings;
};

class VectorTable {
 public:
  VectorTable() = default;
  explicit VectorTable(std::size_t dimension) : dimension_(dimension) {
    if (dimension == 0) throw Error("vector table dimension must be positive");
  }

  std::size_t dimension() const noexcept { return dimension_; }
  std::size_t size() const noexcept { return entries_.size(); }

  // Returns false (and keeps the existing entry) for a duplicate word.
  bool insert(std::string word, DenseVector v) {
    if (v.size() != dimension_) {
      throw Error("vector for '" + word + "' has " + std::to_string(v.size()) +
                  " components, table dimension is " + std::to_string(dimension_));
    }
    if (!v.all_finite()) throw Error("vector for '" + word + "' has non-finite components");
    auto [it, inserted] = entries_.try_emplace(word, std::move(v));
    if (inserted) order_.push_back(std::move(word));
    return inserted;
  }

  const DenseVector* find(const std::string& word) const {
    auto it = entries_.find(word);
    return it == entries_.end() ? nullptr : &it->second;
  }

  bool contains(const std::string& word) const { return entries_.contains(word); }

  // Words in file order.
  const std::vector<std::string>& words() const noexcept { return order_; }

 private:
  std::size_t dimension_ = 0;
  std::unordered_map<std::string, DenseVector> entries_;
  std::vector<std::string> order_;
};

namespace detail {

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n\f\v");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n\f\v");
  return std::string(s.substr(b, e - b + 1));
}

inline std::string lowercase(std::string s) {
  for (char& c : s) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return s;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw Error("error reading '" + path.string() + "'");
  return ss.str();
}

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

inline std::optional<double> parse_double(std::string_view s) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return v;
}

inline std::optional<std::size_t> parse_size(std::string_view s) {
  std::size_t v = 0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return v;
}

}  // namespace detail

// One phrase per line; lowercased, trimmed, blank lines and duplicates dropped.
inline GoldKeySet parse_gold(std::string doc_id, std::string_view content) {
  GoldKeySet gold{std::move(doc_id), {}};
  std::set<std::string> seen;
  std::istringstream in{std::string(content)};
  for (std::string line; std::getline(in, line);) {
    auto phrase = detail::lowercase(detail::trim(line));
    // Inner whitespace runs collapse to one space.
    std::string collapsed;
    for (auto w : detail::split_ws(phrase)) {
      if (!collapsed.empty()) collapsed += ' ';
      collapsed.append(w);
    }
    if (collapsed.empty() || !seen.insert(collapsed).second) continue;
    gold.phrases.push_back(std::move(collapsed));
  }
  return gold;
}

// Pairs <id>.txt with <id>.key in root_path; unpaired documents are skipped with a warning.
inline Dataset load_dataset(const std::filesystem::path& root_path) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(root_path)) throw Error("dataset directory '" + root_path.string() + "' does not exist");
  std::vector<fs::path> texts;
  for (const auto& e : fs::directory_iterator(root_path)) {
    if (e.is_regular_file() && e.path().extension() == ".txt") texts.push_back(e.path());
  }
  std::sort(texts.begin(), texts.end(), [](const fs::path& a, const fs::path& b) {
    return a.stem().string() < b.stem().string();
  });
  Dataset ds;
  for (const auto& txt : texts) {
    const std::string id = txt.stem().string();
    auto key = txt;
    key.replace_extension(".key");
    if (!fs::exists(key)) {
      ds.warnings.push_back("document '" + id + "' has no gold file " + key.string() + "; skipped");
      continue;
    }
    ds.entries.push_back({{id, detail::read_file(txt)}, parse_gold(id, detail::read_file(key))});
  }
  return ds;
}

// Whitespace text format with an optional "vocab_size dimension" header line.
inline VectorTable load_vector_table(const std::filesystem::path& path,
                                     std::optional<std::size_t> limit = std::nullopt) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read vector file '" + path.string() + "'");
  if (limit && *limit == 0) throw Error("vector limit must be positive");

  std::optional<VectorTable> table;
  std::size_t line_no = 0;
  std::size_t kept = 0;
  std::string line;
  std::vector<double> buf;
  while (std::getline(in, line)) {
    ++line_no;
    const auto fields = detail::split_ws(line);
    if (fields.empty()) continue;
    if (line_no == 1 && fields.size() == 2) {
      const auto vocab = detail::parse_size(fields[0]);
      const auto dim = detail::parse_size(fields[1]);
      if (vocab && dim) {
        if (*dim == 0) throw ParseError(path.string(), line_no, "header dimension is zero");
        table.emplace(*dim);
        continue;
      }
    }
    if (!table) {
      if (fields.size() < 2) throw ParseError(path.string(), line_no, "line has no vector components");
      table.emplace(fields.size() - 1);
    }
    if (fields.size() != table->dimension() + 1) {
      throw ParseError(path.string(), line_no,
                       "expected " + std::to_string(table->dimension()) + " components, found " +
                           std::to_string(fields.size() - 1));
    }
    if (limit && kept >= *limit) break;
    buf.clear();
    for (std::size_t k = 1; k < fields.size(); ++k) {
      const auto v = detail::parse_double(fields[k]);
      if (!v || !std::isfinite(*v)) {
        throw ParseError(path.string(), line_no, "non-numeric component '" + std::string(fields[k]) + "'");
      }
      buf.push_back(*v);
    }
    if (table->insert(std::string(fields[0]), DenseVector(buf))) ++kept;
  }
  if (!table) throw Error("vector file '" + path.string() + "' contains no vectors");
  return std::move(*table);
}

struct ReportRow {
  std::size_t rank = 0;
  std::string phrase;
  double score = 0.0;

  friend bool operator==(const ReportRow&, const ReportRow&) = default;
};

inline constexpr std::string_view kKeyphraseHeader = "rank\tphrase\tscore";

inline std::string format_score(double v, int decimals = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

inline void write_keyphrase_report(std::ostream& out, const std::vector<ReportRow>& rows) {
  out << kKeyphraseHeader << '\n';
  for (const auto& r : rows) out << r.rank << '\t' << r.phrase << '\t' << format_score(r.score) << '\n';
}

inline void write_keyphrase_report(const std::filesystem::path& path, const std::vector<ReportRow>& rows) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write report '" + path.string() + "'");
  write_keyphrase_report(out, rows);
  out.flush();
  if (!out) throw Error("failed writing report '" + path.string() + "'");
}

inline std::vector<ReportRow> read_keyphrase_report(std::istream& in, const std::string& name = "<stream>") {
  std::string line;
  if (!std::getline(in, line) || detail::trim(line) != kKeyphraseHeader) {
    throw ParseError(name, 1, "missing keyphrase report header");
  }
  std::vector<ReportRow> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto t1 = line.find('\t');
    const auto t2 = line.rfind('\t');
    if (t1 == std::string::npos || t1 == t2) throw ParseError(name, line_no, "expected rank<TAB>phrase<TAB>score");
    const auto rank = detail::parse_size(std::string_view(line).substr(0, t1));
    const auto score = detail::parse_double(std::string_view(line).substr(t2 + 1));
    if (!rank || !score) throw ParseError(name, line_no, "bad rank or score");
    rows.push_back({*rank, line.substr(t1 + 1, t2 - t1 - 1), *score});
  }
  return rows;
}

inline std::vector<ReportRow> read_keyphrase_report(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read report '" + path.string() + "'");
  return read_keyphrase_report(in, path.string());
}

}  // namespace gleake
