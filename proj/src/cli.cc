// Copyright 2026 The kblink Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "kblink/cli.h"

#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "kblink/annotator.h"
#include "kblink/engine.h"
#include "kblink/error.h"
#include "kblink/evaluation.h"
#include "kblink/indexer.h"
#include "kblink/server.h"

namespace kblink::service {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

std::vector<std::string> SplitLangs(const std::string &s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::string RecordsPath(const std::string &store) {
  return (fs::path(store) / kb::kRecordsFile).string();
}

// Options shared by the commands that load a full engine.
struct EngineFlags {
  std::string config_file;
  std::string store, dict, lm, pagerank, model;
  std::optional<double> threshold;
  std::optional<int> port;

  void Register(CLI::App *cmd) {
    cmd->add_option("--config", config_file, "Key-value engine config file");
    cmd->add_option("--store", store, "Record store directory");
    cmd->add_option("--dict", dict, "Surface dictionary file");
    cmd->add_option("--lm", lm, "Language model file");
    cmd->add_option("--pagerank", pagerank, "PageRank table file");
    cmd->add_option("--model", model, "Classifier model file");
    cmd->add_option("--threshold", threshold, "Decision threshold on the margin");
  }

  // Config file, then environment, then explicit flags.
  EngineConfig Resolve() const {
    EngineConfig config =
        config_file.empty() ? EngineConfig{} : EngineConfig::FromFile(config_file);
    config.ApplyEnvironment();
    if (!store.empty()) config.store_dir = store;
    if (!dict.empty()) config.dictionary_path = dict;
    if (!lm.empty()) config.language_model_path = lm;
    if (!pagerank.empty()) config.pagerank_path = pagerank;
    if (!model.empty()) config.model_path = model;
    if (threshold) config.threshold = threshold;
    if (port) config.port = *port;
    for (const auto &[name, value] :
         {std::pair{"--store", &config.store_dir}, {"--dict", &config.dictionary_path},
          {"--lm", &config.language_model_path}, {"--pagerank", &config.pagerank_path},
          {"--model", &config.model_path}}) {
      if (value->empty()) throw InvalidArgument(std::string("missing ") + name);
    }
    return config;
  }
};

int RunIndex(const std::string &dump, const std::string &out_dir,
             const std::string &langs, std::ostream &err) {
  kb::IndexOptions options;
  options.dump_path = dump;
  options.out_dir = out_dir;
  options.languages = SplitLangs(langs);
  options.on_error = [&err](const ParseError &e) {
    err << "warning: skipping record: " << e.what() << "\n";
  };
  kb::IndexStats stats = kb::IndexDump(options);
  err << "indexed " << stats.dump.items << " items (" << stats.kept
      << " kept, " << stats.dump.errors << " malformed, " << stats.closure_size
      << " types in closure)\n";
  return 0;
}

int RunPageRank(const std::string &store, const std::string &out, double damping,
                double tolerance, int max_iterations, bool filtered,
                std::ostream &err) {
  const uint64_t generation = kb::ReadRecordFileInfo(RecordsPath(store)).generation;
  graph::LinkGraph link_graph;
  const std::string source =
      (fs::path(store) / (filtered ? kb::kRecordsFile : kb::kGraphFile)).string();
  kb::ForEachRecord(source, [&](ItemRecord &&rec) {
    link_graph.AddNode(rec.id, rec.out_links);
  });
  graph::PageRankOptions options;
  options.damping = damping;
  options.tolerance = tolerance;
  options.max_iterations = max_iterations;
  graph::PageRankVector pr = graph::ComputePageRank(link_graph, options);
  pr.set_source_generation(generation);
  pr.Save(out);
  err << "pagerank over " << pr.ids().size() << " items: " << pr.iterations_run()
      << " iterations, residual " << pr.residual() << "\n";
  return 0;
}

int RunTrainLm(const std::string &store, const std::string &out, double alpha,
               const std::string &langs) {
  const auto languages = SplitLangs(langs);
  lm::UnigramLMBuilder builder(alpha);
  auto info = kb::ForEachRecord(RecordsPath(store), [&](ItemRecord &&rec) {
    for (const auto &[lang, label] : rec.labels) {
      if (languages.empty() ||
          std::find(languages.begin(), languages.end(), lang) != languages.end()) {
        builder.Add(label);
      }
    }
  });
  lm::UnigramLM model = builder.Build();
  model.set_source_generation(info.generation);
  model.Save(out);
  return 0;
}

int RunBuildDict(const std::string &store, const std::string &out,
                 const std::string &langs, std::ostream &err) {
  const auto languages = SplitLangs(langs);
  surface::SurfaceDictionary::Builder builder;
  auto info = kb::ForEachRecord(RecordsPath(store), [&](ItemRecord &&rec) {
    surface::AddRecord(builder, rec, languages);
  });
  surface::SurfaceDictionary dict = std::move(builder).Build();
  dict.set_source_generation(info.generation);
  dict.Save(out);
  err << "dictionary with " << dict.size() << " phrases\n";
  return 0;
}

struct TrainFlags {
  std::string dataset, store, dict, lm, pagerank, out;
  bool grid = false;
  classify::TrainConfig config;
};

int RunTrain(const TrainFlags &flags, std::ostream &out, std::ostream &err) {
  const auto dataset = eval::LoadDataset(flags.dataset);
  const kb::RecordStore records = kb::RecordStore::Open(flags.store);
  const auto dict = surface::SurfaceDictionary::Load(flags.dict);
  const auto language_model = lm::UnigramLM::Load(flags.lm);
  const auto pagerank = graph::PageRankVector::Load(flags.pagerank);
  classify::Resources resources{&dict, &language_model, &pagerank, &records};

  classify::TrainConfig config = flags.config;
  if (flags.grid) {
    classify::GridSearchResult search =
        classify::GridSearch(dataset, resources, config, classify::HyperGrid{});
    for (const auto &point : search.points) {
      out << json{{"k", point.config.k},
                  {"beta", point.config.similarity.beta},
                  {"eta", point.config.similarity.eta},
                  {"max_distance", point.config.similarity.max_distance},
                  {"lambda", point.config.lambda},
                  {"cv_micro_f1", point.cv_micro_f1}}
                 .dump()
          << "\n";
    }
    config = search.best;
  }
  classify::TrainReport report;
  classify::LinearModel model = classify::Train(dataset, resources, config, &report);
  model.Save(flags.out);
  err << "trained on " << report.rows << " candidate rows (" << report.positives
      << " positive) from " << report.documents << " documents; "
      << report.unreachable << " of " << report.gold_in_kb
      << " gold links unreachable\n";
  return 0;
}

int RunAnnotate(const EngineFlags &flags, const std::string &input, std::istream &in,
                std::ostream &out) {
  auto engine = Engine::Load(flags.Resolve());
  std::ifstream file;
  if (!input.empty() && input != "-") {
    file.open(input);
    if (!file) throw IoError("cannot open " + input);
  }
  std::istream &source = file.is_open() ? file : in;
  std::string line;
  while (std::getline(source, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    out << engine->AnnotateLine(line) << "\n";
  }
  return 0;
}

int RunEvaluate(const EngineFlags &flags, const std::string &dataset_path,
                const std::string &report_path, std::ostream &out) {
  auto engine = Engine::Load(flags.Resolve());
  const auto dataset = eval::LoadDataset(dataset_path);
  const classify::Annotator &annotator = engine->annotator();
  eval::EvalReport report = eval::Evaluate(
      [&](const std::string &text) { return annotator.Predict(text); }, dataset);
  const std::string text = report.ToJson().dump(2);
  if (report_path.empty()) {
    out << text << "\n";
  } else {
    std::ofstream file(report_path);
    if (!file) throw IoError("cannot write " + report_path);
    file << text << "\n";
  }
  return 0;
}

int RunServe(const EngineFlags &flags, const std::string &host, std::ostream &err) {
  auto engine = Engine::Load(flags.Resolve());
  Server server(*engine);
  err << "serving on " << host << ":" << engine->config().port << "\n";
  if (!server.Listen(host, engine->config().port)) {
    throw IoError("cannot listen on port " + std::to_string(engine->config().port));
  }
  return 0;
}

}  // namespace

int RunCli(int argc, const char *const *argv, std::istream &in, std::ostream &out,
           std::ostream &err) {
  CLI::App app{"Entity linking against a Wikidata-style knowledge base", "kblink"};
  app.require_subcommand(1);

  std::string dump, out_path, langs, store;
  auto *index = app.add_subcommand("index", "Build a record store from an entity dump");
  index->add_option("--dump", dump, "Entity dump, one JSON entity per line (gzip ok)")
      ->required();
  index->add_option("--out", out_path, "Output store directory")->required();
  index->add_option("--langs", langs, "Comma-separated languages to keep");

  double damping = 0.85, tolerance = 1e-10;
  int max_iterations = 100;
  bool filtered = false;
  auto *pagerank = app.add_subcommand("pagerank", "Compute PageRank over the item graph");
  pagerank->add_option("--store", store, "Record store directory")->required();
  pagerank->add_option("--out", out_path, "Output score table")->required();
  pagerank->add_option("--damping", damping, "Damping factor")
      ->check(CLI::Range(0.0, 1.0));
  pagerank->add_option("--tol", tolerance, "L1 convergence tolerance");
  pagerank->add_option("--max-iter", max_iterations, "Iteration cap");
  pagerank->add_flag("--filtered", filtered, "Restrict the graph to type-filtered items");

  double alpha = 1.0;
  auto *train_lm = app.add_subcommand("train-lm", "Train the unigram model on item labels");
  train_lm->add_option("--store", store, "Record store directory")->required();
  train_lm->add_option("--out", out_path, "Output model file")->required();
  train_lm->add_option("--alpha", alpha, "Additive smoothing");
  train_lm->add_option("--langs", langs, "Comma-separated label languages");

  auto *build_dict = app.add_subcommand("build-dict", "Build the surface-form dictionary");
  build_dict->add_option("--store", store, "Record store directory")->required();
  build_dict->add_option("--out", out_path, "Output dictionary file")->required();
  build_dict->add_option("--langs", langs, "Comma-separated languages");

  TrainFlags train_flags;
  auto *train = app.add_subcommand("train", "Train the candidate classifier");
  train->add_option("--dataset", train_flags.dataset, "Gold JSON-lines dataset")->required();
  train->add_option("--store", train_flags.store, "Record store directory")->required();
  train->add_option("--dict", train_flags.dict, "Surface dictionary")->required();
  train->add_option("--lm", train_flags.lm, "Language model")->required();
  train->add_option("--pagerank", train_flags.pagerank, "PageRank table")->required();
  train->add_option("--out", train_flags.out, "Output model file")->required();
  train->add_flag("--grid", train_flags.grid, "Grid search with 5-fold cross-validation");
  train->add_option("--k", train_flags.config.k, "Propagation steps");
  train->add_option("--beta", train_flags.config.similarity.beta, "Walk stay probability");
  train->add_option("--eta", train_flags.config.similarity.eta, "Edge smoothing");
  train->add_option("--distance", train_flags.config.similarity.max_distance,
                    "Maximum mention distance in characters");
  train->add_option("--lambda", train_flags.config.lambda, "L2 regularization");
  train->add_option("--epochs", train_flags.config.epochs, "Training epochs");
  train->add_option("--seed", train_flags.config.seed, "Shuffling seed");

  EngineFlags annotate_flags;
  std::string input;
  auto *annotate = app.add_subcommand("annotate", "Annotate one document per input line");
  annotate_flags.Register(annotate);
  annotate->add_option("--in", input, "Input file (default stdin)");

  EngineFlags evaluate_flags;
  std::string dataset, report;
  auto *evaluate = app.add_subcommand("evaluate", "Score the annotator on a gold dataset");
  evaluate_flags.Register(evaluate);
  evaluate->add_option("--dataset", dataset, "Gold JSON-lines dataset")->required();
  evaluate->add_option("--report", report, "Write the JSON report here");

  EngineFlags serve_flags;
  std::string host = "0.0.0.0";
  auto *serve = app.add_subcommand("serve", "Run the HTTP annotation service");
  serve_flags.Register(serve);
  serve->add_option("--port", serve_flags.port, "Listening port");
  serve->add_option("--host", host, "Listening address");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError &e) {
    err << "kblink: " << e.what() << "\n" << app.help();
    return 2;
  }

  try {
    if (*index) return RunIndex(dump, out_path, langs, err);
    if (*pagerank) {
      return RunPageRank(store, out_path, damping, tolerance, max_iterations, filtered,
                         err);
    }
    if (*train_lm) return RunTrainLm(store, out_path, alpha, langs);
    if (*build_dict) return RunBuildDict(store, out_path, langs, err);
    if (*train) return RunTrain(train_flags, out, err);
    if (*annotate) return RunAnnotate(annotate_flags, input, in, out);
    if (*evaluate) return RunEvaluate(evaluate_flags, dataset, report, out);
    if (*serve) return RunServe(serve_flags, host, err);
  } catch (const std::exception &e) {
    err << "kblink: " << e.what() << "\n";
    return 1;
  }
  err << app.help();
  return 2;
}

}  // namespace kblink::service
