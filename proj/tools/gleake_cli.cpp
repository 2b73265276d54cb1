// gleake: keyphrase extraction, evaluation and sweeps from the command line.
//
//   gleake extract paper.txt --global-vectors vectors.txt --top-n 10
//   gleake evaluate --dataset data/inspec --config best.cfg --output report.tsv
//   gleake sweep --dataset data/inspec --config grid.cfg --output sweep.tsv
//   gleake dump-graph paper.txt --function 6 --nodes nodes.tsv
//   gleake train-tagger --corpus wsj.pos --output tagger.model
//
// GLEAKE_MODEL_DIR may hold en-lexicon.txt, en-morphology.txt, en-context.txt
// (Brill tagger files), tagger.model (perceptron) and vectors.txt; flags win.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gleake/gleake.hpp"

namespace fs = std::filesystem;
using namespace gleake;

namespace {

struct Options {
  std::map<std::string, std::string> settings;  // config key -> value, explicit flags only
  std::string output;
  std::string format = "text";
  std::size_t threads = 1;
  std::string tagger = "brill";
  std::string tagger_model;
  std::string config_file;
  std::string dataset;
  std::string document;
  std::string nodes_file;
  std::string pr_curve;
  std::string corpus;
  int tagger_iterations = 5;
};

std::optional<fs::path> model_dir() {
  if (const char* dir = std::getenv("GLEAKE_MODEL_DIR"); dir && *dir) return fs::path(dir);
  return std::nullopt;
}

ExtractionConfig base_config(const Options& o) {
  return detail::run_stage("config", [&] {
    ExtractionConfig c;
    if (auto dir = model_dir(); dir && fs::exists(*dir / "vectors.txt")) {
      c.global_model_path = (*dir / "vectors.txt").string();
    }
    for (const auto& [k, v] : o.settings) apply_setting(c, k, v);
    c.validate();
    return c;
  });
}

std::shared_ptr<const Tagger> make_tagger(const Options& o) {
  return detail::run_stage("tagger", [&]() -> std::shared_ptr<const Tagger> {
    if (o.tagger == "builtin") return std::make_shared<BrillTagger>();
    if (o.tagger == "perceptron") {
      fs::path path = o.tagger_model;
      if (path.empty()) {
        if (auto dir = model_dir()) path = *dir / "tagger.model";
      }
      if (path.empty()) {
        throw Error("the perceptron tagger needs a model: pass --tagger-model, set GLEAKE_MODEL_DIR, "
                    "or use --tagger brill");
      }
      return std::make_shared<AveragedPerceptronTagger>(AveragedPerceptronTagger::load(path));
    }
    if (o.tagger != "brill") throw Error("unknown tagger '" + o.tagger + "'");
    fs::path dir = o.tagger_model;
    if (dir.empty()) {
      if (auto env = model_dir(); env && fs::exists(*env / "en-lexicon.txt")) dir = *env;
      else dir = fs::path(GLEAKE_DATA_DIR) / "tagger";
    }
    return std::make_shared<BrillTagger>(BrillTagger::from_directory(dir));
  });
}

// Vector tables shared between configurations that name the same file.
class MapperCache {
 public:
  GlobalMapper get(const ExtractionConfig& c) {
    if (c.global_model_path.empty()) {
      throw StageError("global-vectors",
                       "no vector file: pass --global-vectors or put vectors.txt in GLEAKE_MODEL_DIR");
    }
    std::lock_guard lock(mutex_);
    const auto key = c.global_model_path + '|' + std::to_string(c.global_limit);
    auto it = tables_.find(key);
    if (it == tables_.end()) {
      auto table = detail::run_stage("global-vectors", [&] {
        std::optional<std::size_t> limit;
        if (c.global_limit > 0) limit = c.global_limit;
        return std::make_shared<const VectorTable>(load_vector_table(c.global_model_path, limit));
      });
      it = tables_.emplace(key, std::move(table)).first;
    }
    return GlobalMapper::word_sum(it->second);
  }

 private:
  std::mutex mutex_;
  std::map<std::string, std::shared_ptr<const VectorTable>> tables_;
};

void warn_all(const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
}

// Runs `body` against stdout or the --output file.
template <typename F>
void with_output(const std::string& path, F&& body) {
  if (path.empty()) {
    body(std::cout);
    std::cout.flush();
    return;
  }
  detail::run_stage("write-output", [&] {
    std::ofstream out(path);
    if (!out) throw Error("cannot write '" + path + "'");
    body(out);
    out.flush();
    if (!out) throw Error("failed writing '" + path + "'");
    return 0;
  });
}

std::string read_document(const std::string& path) {
  return detail::run_stage("read-document", [&] { return detail::read_file(path); });
}

int run_extract(const Options& o) {
  const auto config = base_config(o);
  const auto tagger = make_tagger(o);
  MapperCache mappers;
  const auto mapper = mappers.get(config);
  const auto text = read_document(o.document);
  const auto ex = extract_keyphrases(fs::path(o.document).stem().string(), text, *tagger, mapper, config);
  warn_all(ex.warnings);
  const auto rows = to_report_rows(ex.keyphrases);
  with_output(o.output, [&](std::ostream& out) {
    if (o.format == "tsv") {
      write_keyphrase_report(out, rows);
      return;
    }
    for (const auto& r : rows) out << r.rank << "  " << r.phrase << "  " << format_score(r.score) << '\n';
  });
  return 0;
}

int run_dump_graph(const Options& o) {
  const auto config = base_config(o);
  const auto tagger = make_tagger(o);
  MapperCache mappers;
  const auto mapper = mappers.get(config);
  const auto prepared = prepare_document(fs::path(o.document).stem().string(), read_document(o.document),
                                         *tagger, config);
  const auto embedded = embed_document(prepared, mapper, config);
  warn_all(embedded.warnings);
  const auto graph = detail::run_stage("graph", [&] {
    return build_graph(prepared.candidates, embedded.vectors, embedded.doc, config.function_id);
  });
  with_output(o.output, [&](std::ostream& out) { write_edge_list(out, graph.graph); });
  if (!o.nodes_file.empty()) {
    with_output(o.nodes_file, [&](std::ostream& out) {
      for (std::size_t i = 0; i < graph.nodes.size(); ++i) out << i << '\t' << graph.nodes[i].phrase() << '\n';
    });
  }
  return 0;
}

fs::path pr_curve_path(const Options& o) {
  if (!o.pr_curve.empty()) return o.pr_curve;
  if (!o.output.empty()) return fs::path(o.output).parent_path() / "pr_curve.tsv";
  return "pr_curve.tsv";
}

int run_evaluate(const Options& o, bool is_sweep) {
  const auto base = base_config(o);
  std::vector<ExtractionConfig> configs{base};
  if (!o.config_file.empty()) {
    configs = detail::run_stage("config", [&] { return load_config_file(o.config_file, base); });
  } else if (is_sweep) {
    throw StageError("config", "sweep needs --config <file> with one configuration per line");
  }
  const auto dataset = detail::run_stage("dataset", [&] { return load_dataset(o.dataset); });
  warn_all(dataset.warnings);
  if (dataset.entries.empty()) throw StageError("dataset", "no documents with gold keys in '" + o.dataset + "'");
  const auto tagger = make_tagger(o);
  MapperCache mappers;
  const std::string dataset_id = fs::path(o.dataset).filename().string();
  Evaluator evaluator(dataset, dataset_id, tagger, [&](const ExtractionConfig& c) { return mappers.get(c); },
                      o.threads);
  const auto result = sweep(evaluator, configs, dataset_id);
  with_output(o.output, [&](std::ostream& out) {
    if (!is_sweep && result.rows.size() == 1 && result.rows[0].error.empty()) {
      write_eval_report(out, result.rows[0]);
    } else {
      write_eval_table(out, result.rows);
    }
  });
  if (!result.pr_curve.empty()) {
    with_output(pr_curve_path(o).string(), [&](std::ostream& out) { write_pr_curve(out, result.pr_curve); });
  }
  int status = 0;
  for (const auto& r : result.rows) {
    if (!r.error.empty()) {
      std::cerr << "error: " << to_string(r.config) << ": " << r.error << '\n';
      status = 1;
    }
  }
  return status;
}

int run_train_tagger(const Options& o) {
  const auto sentences = detail::run_stage("read-corpus", [&] {
    return AveragedPerceptronTagger::read_tagged_corpus(o.corpus);
  });
  if (sentences.empty()) throw StageError("read-corpus", "no tagged sentences in '" + o.corpus + "'");
  std::uint64_t seed = 1;
  if (auto it = o.settings.find("seed"); it != o.settings.end()) {
    seed = detail::run_stage("config", [&] { return detail::parse_count("seed", it->second); });
  }
  AveragedPerceptronTagger tagger;
  detail::run_stage("train-tagger", [&] {
    tagger.train(sentences, o.tagger_iterations, seed);
    return 0;
  });
  detail::run_stage("write-output", [&] {
    tagger.save(o.output);
    return 0;
  });
  return 0;
}

// Flags shared by the pipeline subcommands; each maps to one config key.
void add_pipeline_flags(CLI::App* app, Options& o) {
  struct ValueFlag {
    const char* name;
    const char* key;
    const char* help;
  };
  static const ValueFlag kValueFlags[] = {
      {"--method", "method", "gleake, tfidf-sum, tfidf-mean or cooccurrence (default gleake)"},
      {"--alpha", "alpha", "outlier filter strength (default 7)"},
      {"--m", "m", "leading words in the local document vector (default 10)"},
      {"--n-repr", "n-repr", "leading words in the global document vector (default 250)"},
      {"--function", "function", "edge weighting function 1..8 (default 6)"},
      {"--centrality", "centrality",
       "degree, eigenvector, pagerank, ppr, subgraph, harmonic, betweenness or closeness (default eigenvector)"},
      {"--local-model", "local-model", "skipgram or glove (default glove)"},
      {"--local-dim", "local-dim", "local vector dimension (default 100)"},
      {"--local-window", "local-window", "local context window (default 5)"},
      {"--local-epochs", "local-epochs", "local training epochs (default 200)"},
      {"--local-negative", "local-negative", "negative samples for skipgram (default 5)"},
      {"--learning-rate", "learning-rate", "initial local learning rate (default 0.025)"},
      {"--seed", "seed", "random seed (default 1)"},
      {"--global-vectors", "global-vectors", "word vector file (text format)"},
      {"--global-limit", "global-limit", "read at most this many vectors (default all)"},
      {"--damping", "damping", "PageRank damping (default 0.85)"},
      {"--top-n", "top-n", "keyphrases per document (default 15)"},
      {"--distance", "distance", "inverse or one-minus (default inverse)"},
      {"--match", "match", "exact or stemmed (default stemmed)"},
      {"--subgraph-cap", "subgraph-cap", "largest component for subgraph centrality (default 5000)"},
      {"--cooc-window", "cooc-window", "co-occurrence baseline window (default 10)"},
  };
  for (const auto& f : kValueFlags) {
    const std::string key = f.key;
    app->add_option_function<std::string>(f.name, [&o, key](const std::string& v) { o.settings[key] = v; },
                                          f.help);
  }
  static const ValueFlag kSwitches[] = {
      {"--unweighted-pr", "unweighted-pr", "PageRank over unweighted out-degrees"},
      {"--weighted-degree", "weighted-degree", "degree centrality from edge weights"},
      {"--drop-absent-gold", "drop-absent-gold", "ignore gold phrases absent from the document"},
      {"--submatches", "submatches", "also emit sub-spans of each pattern match"},
  };
  for (const auto& f : kSwitches) {
    const std::string key = f.key;
    app->add_flag_callback(f.name, [&o, key] { o.settings[key] = "true"; }, f.help);
  }
  app->add_option("--output,-o", o.output, "write results here instead of stdout");
  app->add_option("--threads", o.threads, "worker threads for datasets (default 1)")->check(CLI::PositiveNumber);
  app->add_option("--tagger", o.tagger, "brill, builtin or perceptron (default brill)")
      ->check(CLI::IsMember({"brill", "builtin", "perceptron"}));
  app->add_option("--tagger-model", o.tagger_model, "Brill file directory or perceptron model file");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Keyphrase extraction over embedding-based candidate graphs"};
  app.require_subcommand(1);
  Options o;

  auto* extract = app.add_subcommand("extract", "rank keyphrases of one document");
  add_pipeline_flags(extract, o);
  extract->add_option("document", o.document, "plain-text document")->required()->check(CLI::ExistingFile);
  extract->add_option("--format", o.format, "text or tsv (default text)")->check(CLI::IsMember({"text", "tsv"}));

  auto* dump = app.add_subcommand("dump-graph", "write the candidate graph as an edge list");
  add_pipeline_flags(dump, o);
  dump->add_option("document", o.document, "plain-text document")->required()->check(CLI::ExistingFile);
  dump->add_option("--nodes", o.nodes_file, "also write index<TAB>phrase for every node");

  auto* evaluate = app.add_subcommand("evaluate", "micro-averaged P/R/F1 on a dataset");
  auto* sweep_cmd = app.add_subcommand("sweep", "evaluate every configuration of a config file");
  for (auto* sub : {evaluate, sweep_cmd}) {
    add_pipeline_flags(sub, o);
    sub->add_option("--dataset", o.dataset, "directory of <id>.txt and <id>.key files")
        ->required()
        ->check(CLI::ExistingDirectory);
    sub->add_option("--config", o.config_file, "one key=value configuration per line")->check(CLI::ExistingFile);
    sub->add_option("--pr-curve", o.pr_curve, "precision-recall output (default pr_curve.tsv next to --output)");
  }

  auto* train = app.add_subcommand("train-tagger", "train an averaged perceptron tagger");
  train->add_option("--corpus", o.corpus, "one sentence per line of word/TAG tokens")
      ->required()
      ->check(CLI::ExistingFile);
  train->add_option("--output,-o", o.output, "model file")->required();
  train->add_option("--iterations", o.tagger_iterations, "training passes (default 5)")->check(CLI::PositiveNumber);
  train->add_option_function<std::string>("--seed", [&o](const std::string& v) { o.settings["seed"] = v; },
                                          "shuffle seed (default 1)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*extract) return run_extract(o);
    if (*dump) return run_dump_graph(o);
    if (*evaluate) return run_evaluate(o, false);
    if (*sweep_cmd) return run_evaluate(o, true);
    if (*train) return run_train_tagger(o);
  } catch (const std::exception& e) {
    std::cerr << "gleake: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
