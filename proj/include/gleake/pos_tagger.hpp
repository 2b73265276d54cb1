#pragma once

// Part-of-speech taggers over the Penn Treebank tag inventory.
//
// BrillTagger is the default: lexicon lookup, lexical rules for unknown words,
// then contextual transformation rules. The rule and lexicon files under
// data/tagger/ come from Brill's tagger as redistributed by the pattern
// library (BSD, see data/tagger/LICENSE-pattern.txt). Without files it falls
// back to a built-in closed-class lexicon and suffix heuristics.
//
// AveragedPerceptronTagger is trained from a word/TAG corpus and persisted as
// a plain text model file.

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <memory>
#include <random>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "gleake/error.hpp"

namespace gleake {

inline constexpr std::array<std::string_view, 45> kPennTags = {
    "CC",  "CD",  "DT",  "EX",  "FW",  "IN",   "JJ",  "JJR", "JJS", "LS", "MD",  "NN",
    "NNS", "NNP", "NNPS", "PDT", "POS", "PRP", "PRP$", "RB", "RBR", "RBS", "RP", "SYM",
    "TO",  "UH",  "VB",  "VBD", "VBG", "VBN", "VBP", "VBZ", "WDT", "WP",  "WP$", "WRB",
    "#",   "$",   "''",  "``",  "(",   ")",   ",",   ".",   ":"};

inline bool is_penn_tag(std::string_view tag) {
  return std::find(kPennTags.begin(), kPennTags.end(), tag) != kPennTags.end();
}

class Tagger {
 public:
  virtual ~Tagger() = default;
  virtual std::vector<std::string> tag(std::span<const std::string> words) const = 0;
};

namespace detail {

inline std::vector<std::string> split_fields(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string f; in >> f;) out.push_back(std::move(f));
  return out;
}

inline std::ifstream open_model_file(const std::filesystem::path& path, std::string_view what) {
  std::ifstream in(path);
  if (!in) {
    throw Error("cannot open " + std::string(what) + " '" + path.string() +
                "'; pass a model file with --tagger-model, set GLEAKE_MODEL_DIR to a directory "
                "containing en-lexicon.txt, en-morphology.txt and en-context.txt, or use "
                "--tagger builtin");
  }
  return in;
}

inline bool ends_with(std::string_view w, std::string_view suffix) { return w.ends_with(suffix); }

}  // namespace detail

class BrillTagger final : public Tagger {
 public:
  // Built-in closed-class lexicon only; no files needed.
  BrillTagger() { seed_builtin_lexicon(); }

  static BrillTagger from_directory(const std::filesystem::path& dir) {
    BrillTagger t;
    t.load_lexicon(dir / "en-lexicon.txt");
    t.load_morphology(dir / "en-morphology.txt");
    t.load_context(dir / "en-context.txt");
    return t;
  }

  // Lines "word TAG [TAG...]"; the first tag is the most likely one.
  void load_lexicon(const std::filesystem::path& path) {
    auto in = detail::open_model_file(path, "tagger lexicon");
    std::string line;
    while (std::getline(in, line)) {
      if (line.starts_with(";;;")) continue;
      auto f = detail::split_fields(line);
      if (f.size() < 2) continue;
      lexicon_.insert_or_assign(f[0], f[1]);
    }
    builtin_only_ = false;
  }

  // Brill lexical rules, e.g. "NN ing fhassuf 3 VBG x" or "ly hassuf 2 RB x".
  void load_morphology(const std::filesystem::path& path) {
    auto in = detail::open_model_file(path, "tagger morphology rules");
    std::string line;
    while (std::getline(in, line)) {
      if (line.starts_with(";;;")) continue;
      auto f = detail::split_fields(line);
      if (f.size() < 5) continue;
      LexicalRule r;
      std::string cmd;
      if (f[1].size() > 0 && is_lexical_command(f[1])) {
        r.affix = f[0];
        cmd = f[1];
        r.to = f[3];
      } else if (f.size() >= 6 && is_lexical_command(f[2])) {
        r.from = f[0];
        r.affix = f[1];
        cmd = f[2];
        r.to = f[4];
      } else {
        continue;
      }
      if (cmd.front() == 'f') cmd.erase(0, 1);
      r.command = cmd;
      lexical_rules_.push_back(std::move(r));
    }
    builtin_only_ = false;
  }

  // Brill contextual rules, e.g. "NN VB PREVTAG TO".
  void load_context(const std::filesystem::path& path) {
    auto in = detail::open_model_file(path, "tagger context rules");
    std::string line;
    while (std::getline(in, line)) {
      if (line.starts_with(";;;")) continue;
      auto f = detail::split_fields(line);
      if (f.size() < 4) continue;
      ContextRule r{f[0], f[1], f[2], f[3], f.size() > 4 ? f[4] : std::string{}};
      std::transform(r.command.begin(), r.command.end(), r.command.begin(),
                     [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
      context_rules_.push_back(std::move(r));
    }
    builtin_only_ = false;
  }

  std::size_t lexicon_size() const noexcept { return lexicon_.size(); }

  std::vector<std::string> tag(std::span<const std::string> words) const override {
    std::vector<std::string> tags(words.size());
    std::vector<bool> known(words.size(), false);
    for (std::size_t i = 0; i < words.size(); ++i) {
      if (auto it = lexicon_.find(words[i]); it != lexicon_.end()) {
        tags[i] = it->second;
        known[i] = true;
      } else {
        tags[i] = "NN";
      }
    }
    for (std::size_t i = 0; i < words.size(); ++i) {
      if (known[i]) continue;
      if (builtin_only_) {
        tags[i] = suffix_guess(words[i]);
      } else {
        apply_lexical_rules(words, i, tags[i]);
      }
    }
    apply_context_rules(words, tags);
    return tags;
  }

 private:
  struct LexicalRule {
    std::string from;  // empty: applies to any current tag
    std::string affix;
    std::string command;
    std::string to;
  };

  struct ContextRule {
    std::string from;
    std::string to;
    std::string command;
    std::string x;
    std::string y;
  };

  static bool is_lexical_command(std::string_view cmd) {
    if (cmd.starts_with("f")) cmd.remove_prefix(1);
    static constexpr std::array<std::string_view, 9> kCommands = {
        "word", "char", "haspref", "hassuf", "addpref", "addsuf", "deletepref", "deletesuf",
        "goodleft"};
    return cmd == "goodright" ||
           std::find(kCommands.begin(), kCommands.end(), cmd) != kCommands.end();
  }

  bool known_word(const std::string& w) const { return lexicon_.contains(w); }

  void apply_lexical_rules(std::span<const std::string> words, std::size_t i,
                           std::string& tag) const {
    const std::string& w = words[i];
    const std::string prev = i > 0 ? words[i - 1] : std::string{};
    const std::string next = i + 1 < words.size() ? words[i + 1] : std::string{};
    for (const auto& r : lexical_rules_) {
      if (!r.from.empty() && r.from != tag) continue;
      const std::string& x = r.affix;
      const std::string& c = r.command;
      bool hit = false;
      if (c == "word") hit = w == x;
      else if (c == "char") hit = w.find(x) != std::string::npos;
      else if (c == "haspref") hit = w.starts_with(x);
      else if (c == "hassuf") hit = w.ends_with(x);
      else if (c == "addpref") hit = known_word(x + w);
      else if (c == "addsuf") hit = known_word(w + x);
      else if (c == "deletepref") hit = w.starts_with(x) && known_word(w.substr(x.size()));
      else if (c == "deletesuf")
        hit = w.ends_with(x) && known_word(w.substr(0, w.size() - x.size()));
      else if (c == "goodleft") hit = x == next;
      else if (c == "goodright") hit = x == prev;
      if (hit) tag = r.to;
    }
  }

  void apply_context_rules(std::span<const std::string> words,
                           std::vector<std::string>& tags) const {
    if (context_rules_.empty()) return;
    static const std::string kPad = "STAART";
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(words.size());
    auto tag_at = [&](std::ptrdiff_t k) -> const std::string& {
      return k < 0 || k >= n ? kPad : tags[static_cast<std::size_t>(k)];
    };
    auto word_at = [&](std::ptrdiff_t k) -> const std::string& {
      return k < 0 || k >= n ? kPad : words[static_cast<std::size_t>(k)];
    };
    for (const auto& r : context_rules_) {
      for (std::ptrdiff_t i = 0; i < n; ++i) {
        if (tags[static_cast<std::size_t>(i)] != r.from && r.from != "*") continue;
        const auto& c = r.command;
        const auto& x = r.x;
        const auto& y = r.y;
        bool hit = false;
        if (c == "prevtag") hit = x == tag_at(i - 1);
        else if (c == "nexttag") hit = x == tag_at(i + 1);
        else if (c == "prev2tag") hit = x == tag_at(i - 2);
        else if (c == "next2tag") hit = x == tag_at(i + 2);
        else if (c == "prev1or2tag") hit = x == tag_at(i - 1) || x == tag_at(i - 2);
        else if (c == "next1or2tag") hit = x == tag_at(i + 1) || x == tag_at(i + 2);
        else if (c == "prev1or2or3tag")
          hit = x == tag_at(i - 1) || x == tag_at(i - 2) || x == tag_at(i - 3);
        else if (c == "next1or2or3tag")
          hit = x == tag_at(i + 1) || x == tag_at(i + 2) || x == tag_at(i + 3);
        else if (c == "surroundtag") hit = x == tag_at(i - 1) && y == tag_at(i + 1);
        else if (c == "curwd") hit = x == word_at(i);
        else if (c == "prevwd") hit = x == word_at(i - 1);
        else if (c == "nextwd") hit = x == word_at(i + 1);
        else if (c == "prev2wd") hit = x == word_at(i - 2);
        else if (c == "next2wd") hit = x == word_at(i + 2);
        else if (c == "prev1or2wd") hit = x == word_at(i - 1) || x == word_at(i - 2);
        else if (c == "next1or2wd") hit = x == word_at(i + 1) || x == word_at(i + 2);
        else if (c == "prevwdtag") hit = x == word_at(i - 1) && y == tag_at(i - 1);
        else if (c == "nextwdtag") hit = x == word_at(i + 1) && y == tag_at(i + 1);
        else if (c == "wdprevtag") hit = x == tag_at(i - 1) && y == word_at(i);
        else if (c == "wdnexttag") hit = x == word_at(i) && y == tag_at(i + 1);
        else if (c == "wdand2aft") hit = x == word_at(i) && y == word_at(i + 2);
        else if (c == "wdand2bfr") hit = x == word_at(i - 2) && y == word_at(i);
        else if (c == "wdand2tagbfr") hit = x == tag_at(i - 2) && y == word_at(i);
        else if (c == "wdand2tagaft") hit = x == word_at(i) && y == tag_at(i + 2);
        else if (c == "lbigram") hit = x == word_at(i - 1) && y == word_at(i);
        else if (c == "rbigram") hit = x == word_at(i) && y == word_at(i + 1);
        else if (c == "prevbigram") hit = x == tag_at(i - 2) && y == tag_at(i - 1);
        else if (c == "nextbigram") hit = x == tag_at(i + 1) && y == tag_at(i + 2);
        if (hit) tags[static_cast<std::size_t>(i)] = r.to;
      }
    }
  }

  static std::string suffix_guess(std::string_view w) {
    using detail::ends_with;
    if (w.find('-') != std::string_view::npos && w.size() > 1) return "JJ";
    if (w.size() > 4 && ends_with(w, "ing")) return "VBG";
    if (w.size() > 3 && ends_with(w, "ed")) return "VBN";
    if (w.size() > 3 && ends_with(w, "ly")) return "RB";
    for (std::string_view s : {"ous", "ful", "ive", "able", "ible", "less", "ical", "ish", "ary"}) {
      if (w.size() > s.size() + 2 && ends_with(w, s)) return "JJ";
    }
    if (w.size() > 4 && (ends_with(w, "al") || ends_with(w, "ic"))) return "JJ";
    if (w.size() > 3 && ends_with(w, "s") && !ends_with(w, "ss") && !ends_with(w, "us") &&
        !ends_with(w, "is")) {
      return "NNS";
    }
    return "NN";
  }

  void seed_builtin_lexicon() {
    static constexpr std::pair<std::string_view, std::string_view> kWords[] = {
        {"the", "DT"},      {"a", "DT"},        {"an", "DT"},       {"this", "DT"},
        {"that", "IN"},     {"these", "DT"},    {"those", "DT"},    {"each", "DT"},
        {"every", "DT"},    {"some", "DT"},     {"any", "DT"},      {"no", "DT"},
        {"all", "DT"},      {"both", "DT"},     {"another", "DT"},  {"either", "DT"},
        {"of", "IN"},       {"in", "IN"},       {"on", "IN"},       {"at", "IN"},
        {"by", "IN"},       {"for", "IN"},      {"with", "IN"},     {"from", "IN"},
        {"into", "IN"},     {"over", "IN"},     {"under", "IN"},    {"between", "IN"},
        {"through", "IN"},  {"about", "IN"},    {"than", "IN"},     {"as", "IN"},
        {"if", "IN"},       {"because", "IN"},  {"while", "IN"},    {"whether", "IN"},
        {"since", "IN"},    {"without", "IN"},  {"within", "IN"},   {"across", "IN"},
        {"during", "IN"},   {"against", "IN"},  {"after", "IN"},    {"before", "IN"},
        {"among", "IN"},    {"per", "IN"},      {"via", "IN"},      {"to", "TO"},
        {"and", "CC"},      {"or", "CC"},       {"but", "CC"},      {"nor", "CC"},
        {"yet", "CC"},      {"i", "PRP"},       {"we", "PRP"},      {"you", "PRP"},
        {"he", "PRP"},      {"she", "PRP"},     {"it", "PRP"},      {"they", "PRP"},
        {"them", "PRP"},    {"us", "PRP"},      {"our", "PRP$"},    {"its", "PRP$"},
        {"their", "PRP$"},  {"his", "PRP$"},    {"her", "PRP$"},    {"my", "PRP$"},
        {"your", "PRP$"},   {"is", "VBZ"},      {"are", "VBP"},     {"was", "VBD"},
        {"were", "VBD"},    {"be", "VB"},       {"been", "VBN"},    {"being", "VBG"},
        {"has", "VBZ"},     {"have", "VBP"},    {"had", "VBD"},     {"do", "VBP"},
        {"does", "VBZ"},    {"did", "VBD"},     {"can", "MD"},      {"could", "MD"},
        {"may", "MD"},      {"might", "MD"},    {"must", "MD"},     {"shall", "MD"},
        {"should", "MD"},   {"will", "MD"},     {"would", "MD"},    {"not", "RB"},
        {"also", "RB"},     {"very", "RB"},     {"more", "RBR"},    {"most", "RBS"},
        {"only", "RB"},     {"then", "RB"},     {"there", "EX"},    {"which", "WDT"},
        {"what", "WP"},     {"who", "WP"},      {"whom", "WP"},     {"whose", "WP$"},
        {"where", "WRB"},   {"when", "WRB"},    {"how", "WRB"},     {"why", "WRB"},
        {"such", "JJ"},     {"other", "JJ"},    {"new", "JJ"},      {"many", "JJ"},
        {"much", "JJ"},     {"few", "JJ"},      {"several", "JJ"},  {"same", "JJ"},
        {"different", "JJ"},{"large", "JJ"},    {"small", "JJ"},    {"high", "JJ"},
        {"low", "JJ"},      {"good", "JJ"},     {"best", "JJS"},    {"better", "JJR"},
        {"first", "JJ"},    {"last", "JJ"},     {"quick", "JJ"},    {"slow", "JJ"},
        {"one", "CD"},      {"two", "CD"},      {"three", "CD"},    {"four", "CD"},
        {"five", "CD"},     {"ten", "CD"},      {"hundred", "CD"},  {"thousand", "CD"},
        {"use", "VB"},      {"show", "VBP"},    {"propose", "VBP"}, {"present", "VBP"},
    };
    for (const auto& [w, t] : kWords) lexicon_.emplace(std::string(w), std::string(t));
  }

  std::unordered_map<std::string, std::string> lexicon_;
  std::vector<LexicalRule> lexical_rules_;
  std::vector<ContextRule> context_rules_;
  bool builtin_only_ = true;
};

// Averaged perceptron with the usual local-window feature set.
class AveragedPerceptronTagger final : public Tagger {
 public:
  using Sentence = std::vector<std::pair<std::string, std::string>>;

  // Corpus: one sentence per line of whitespace-separated word/TAG tokens.
  static std::vector<Sentence> read_tagged_corpus(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open tagged corpus '" + path.string() + "'");
    std::vector<Sentence> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      Sentence s;
      for (const auto& tok : detail::split_fields(line)) {
        const auto slash = tok.rfind('/');
        if (slash == std::string::npos || slash == 0 || slash + 1 == tok.size()) {
          throw ParseError(path.string(), line_no, "expected word/TAG, got '" + tok + "'");
        }
        s.emplace_back(tok.substr(0, slash), tok.substr(slash + 1));
      }
      if (!s.empty()) out.push_back(std::move(s));
    }
    return out;
  }

  void train(const std::vector<Sentence>& sentences, int iterations, std::uint64_t seed) {
    build_tagdict(sentences);
    for (const auto& s : sentences) {
      for (const auto& [w, t] : s) classes_.insert(t);
    }
    std::vector<std::size_t> order(sentences.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::mt19937_64 rng(seed);
    for (int it = 0; it < iterations; ++it) {
      for (std::size_t si : order) {
        const auto& sent = sentences[si];
        std::vector<std::string> words;
        for (const auto& [w, t] : sent) words.push_back(w);
        std::string prev = "-START-", prev2 = "-START2-";
        for (std::size_t i = 0; i < sent.size(); ++i) {
          std::string guess;
          if (auto td = tagdict_.find(normalize(words[i])); td != tagdict_.end()) {
            guess = td->second;
          } else {
            const auto feats = features(words, i, prev, prev2);
            guess = predict(feats);
            update(sent[i].second, guess, feats);
          }
          prev2 = prev;
          prev = guess;
        }
      }
      // Deterministic shuffle between passes.
      for (std::size_t k = order.size(); k > 1; --k) {
        std::swap(order[k - 1], order[rng() % k]);
      }
    }
    average_weights();
  }

  std::vector<std::string> tag(std::span<const std::string> words) const override {
    std::vector<std::string> out;
    out.reserve(words.size());
    std::vector<std::string> ctx(words.begin(), words.end());
    std::string prev = "-START-", prev2 = "-START2-";
    for (std::size_t i = 0; i < ctx.size(); ++i) {
      std::string guess;
      if (auto td = tagdict_.find(normalize(ctx[i])); td != tagdict_.end()) {
        guess = td->second;
      } else {
        guess = predict(features(ctx, i, prev, prev2));
      }
      out.push_back(guess);
      prev2 = prev;
      prev = guess;
    }
    return out;
  }

  // Text model: "C tag" lines, "D word tag" lines, then "W feature tag weight" lines.
  void save(const std::filesystem::path& path) const {
    std::ofstream out(path);
    if (!out) throw Error("cannot write tagger model '" + path.string() + "'");
    out.precision(17);
    for (const auto& c : classes_) out << "C " << c << '\n';
    std::map<std::string, std::string> td(tagdict_.begin(), tagdict_.end());
    for (const auto& [w, t] : td) out << "D " << w << ' ' << t << '\n';
    std::map<std::string, std::map<std::string, double>> ws;
    for (const auto& [f, row] : weights_) {
      for (const auto& [c, w] : row) {
        if (w != 0.0) ws[f][c] = w;
      }
    }
    for (const auto& [f, row] : ws) {
      for (const auto& [c, w] : row) out << "W " << f << ' ' << c << ' ' << w << '\n';
    }
    if (!out) throw Error("failed writing tagger model '" + path.string() + "'");
  }

  static AveragedPerceptronTagger load(const std::filesystem::path& path) {
    auto in = detail::open_model_file(path, "perceptron tagger model");
    AveragedPerceptronTagger t;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      auto f = detail::split_fields(line);
      if (f.empty()) continue;
      if (f[0] == "C" && f.size() == 2) {
        t.classes_.insert(f[1]);
      } else if (f[0] == "D" && f.size() == 3) {
        t.tagdict_[f[1]] = f[2];
      } else if (f[0] == "W" && f.size() == 4) {
        try {
          t.weights_[f[1]][f[2]] = std::stod(f[3]);
        } catch (const std::exception&) {
          throw ParseError(path.string(), line_no, "bad weight '" + f[3] + "'");
        }
      } else {
        throw ParseError(path.string(), line_no, "unrecognised model line");
      }
    }
    if (t.classes_.empty()) throw Error("perceptron tagger model '" + path.string() + "' has no classes");
    return t;
  }

 private:
  static std::string normalize(const std::string& w) {
    if (w.find('-') != std::string::npos && w.front() != '-') return "!HYPHEN";
    return w;
  }

  static std::string suffix(const std::string& w, std::size_t n) {
    return w.size() <= n ? w : w.substr(w.size() - n);
  }

  static std::vector<std::string> features(const std::vector<std::string>& words, std::size_t i,
                                           const std::string& prev, const std::string& prev2) {
    auto at = [&](std::ptrdiff_t k) -> std::string {
      if (k < 0) return k == -1 ? "-START-" : "-START2-";
      if (static_cast<std::size_t>(k) >= words.size()) {
        return static_cast<std::size_t>(k) == words.size() ? "-END-" : "-END2-";
      }
      return normalize(words[static_cast<std::size_t>(k)]);
    };
    const auto ii = static_cast<std::ptrdiff_t>(i);
    const std::string w = at(ii);
    return {
        "bias",
        "i_suffix=" + suffix(w, 3),
        "i_pref1=" + w.substr(0, 1),
        "i-1_tag=" + prev,
        "i-2_tag=" + prev2,
        "i_tag+i-2_tag=" + prev + "+" + prev2,
        "i_word=" + w,
        "i-1_tag+i_word=" + prev + "+" + w,
        "i-1_word=" + at(ii - 1),
        "i-1_suffix=" + suffix(at(ii - 1), 3),
        "i-2_word=" + at(ii - 2),
        "i+1_word=" + at(ii + 1),
        "i+1_suffix=" + suffix(at(ii + 1), 3),
        "i+2_word=" + at(ii + 2),
    };
  }

  std::string predict(const std::vector<std::string>& feats) const {
    std::map<std::string, double> scores;
    for (const auto& c : classes_) scores[c] = 0.0;
    for (const auto& f : feats) {
      auto it = weights_.find(f);
      if (it == weights_.end()) continue;
      for (const auto& [c, w] : it->second) scores[c] += w;
    }
    std::string best;
    double best_score = -std::numeric_limits<double>::infinity();
    for (const auto& [c, s] : scores) {
      if (s > best_score) {
        best_score = s;
        best = c;
      }
    }
    return best;
  }

  void update(const std::string& truth, const std::string& guess,
              const std::vector<std::string>& feats) {
    ++instances_;
    if (truth == guess) return;
    for (const auto& f : feats) {
      bump(f, truth, 1.0);
      bump(f, guess, -1.0);
    }
  }

  void bump(const std::string& feat, const std::string& cls, double delta) {
    const std::string key = feat + '\x1f' + cls;
    double& w = weights_[feat][cls];
    totals_[key] += static_cast<double>(instances_ - stamps_[key]) * w;
    stamps_[key] = instances_;
    w += delta;
  }

  void average_weights() {
    for (auto& [feat, row] : weights_) {
      for (auto& [cls, w] : row) {
        const std::string key = feat + '\x1f' + cls;
        double total = totals_[key] + static_cast<double>(instances_ - stamps_[key]) * w;
        w = instances_ > 0 ? total / static_cast<double>(instances_) : w;
      }
    }
    totals_.clear();
    stamps_.clear();
  }

  // Frequent words whose tag is almost always the same skip the model.
  void build_tagdict(const std::vector<Sentence>& sentences) {
    std::map<std::string, std::map<std::string, std::size_t>> counts;
    for (const auto& s : sentences) {
      for (const auto& [w, t] : s) ++counts[w][t];
    }
    for (const auto& [w, tags] : counts) {
      std::size_t total = 0, best = 0;
      std::string best_tag;
      for (const auto& [t, c] : tags) {
        total += c;
        if (c > best) {
          best = c;
          best_tag = t;
        }
      }
      if (total >= 20 && static_cast<double>(best) / static_cast<double>(total) >= 0.97) {
        tagdict_[w] = best_tag;
      }
    }
  }

  std::set<std::string> classes_;
  std::unordered_map<std::string, std::string> tagdict_;
  std::unordered_map<std::string, std::unordered_map<std::string, double>> weights_;
  std::unordered_map<std::string, double> totals_;
  std::unordered_map<std::string, std::size_t> stamps_;
  std::size_t instances_ = 0;
};

}  // namespace gleake
