#include "tmprune/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "tmprune/dataset.hpp"
#include "tmprune/error.hpp"
#include "tmprune/eval.hpp"
#include "tmprune/explain.hpp"
#include "tmprune/fingerprint.hpp"
#include "tmprune/model_io.hpp"
#include "tmprune/run_config.hpp"
#include "tmprune/synthetic.hpp"

namespace tmprune {
namespace fs = std::filesystem;
namespace {

using json = nlohmann::ordered_json;

struct CommonPaths {
  std::string vocab;
  std::string labels;
};

fs::path sidecar(const std::string& explicit_path, const std::string& model_path,
                 const char* name) {
  if (!explicit_path.empty()) return explicit_path;
  return fs::path(model_path).parent_path() / name;
}

Vocabulary load_bound_vocab(const std::string& model_path, const Model& model,
                            const std::string& vocab_flag) {
  Vocabulary vocab = Vocabulary::load(sidecar(vocab_flag, model_path, "vocab.txt"));
  if (vocab.fingerprint() != model.vocab_fingerprint()) {
    throw FormatError("vocabulary fingerprint " + fingerprint_hex(vocab.fingerprint()) +
                      " does not match model " + model_path + " (" +
                      fingerprint_hex(model.vocab_fingerprint()) + ")");
  }
  return vocab;
}

std::vector<std::string> load_bound_labels(const std::string& model_path, const Model& model,
                                           const std::string& labels_flag) {
  const fs::path path = sidecar(labels_flag, model_path, "labels.txt");
  std::vector<std::string> labels;
  if (fs::exists(path)) {
    labels = load_labels(path);
  } else {
    for (std::size_t c = 0; c < model.config().num_classes; ++c) labels.push_back(std::to_string(c));
  }
  if (labels.size() != model.config().num_classes) {
    throw FormatError("label file lists " + std::to_string(labels.size()) +
                      " labels but the model has " +
                      std::to_string(model.config().num_classes) + " classes");
  }
  return labels;
}

void write_text(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + path.string());
  out << content;
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw DataError("cannot create output directory " + dir + ": " + ec.message());
}

std::optional<double> fraction_from_name(const std::string& stem) {
  const std::string key = ".pruned-";
  const auto pos = stem.rfind(key);
  if (pos == std::string::npos) return std::nullopt;
  try {
    return std::stod(stem.substr(pos + key.size())) / 100.0;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

// ---- train ----------------------------------------------------------------

struct TrainArgs {
  std::string config;
  std::string train_path;
  std::string test_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  std::size_t epochs = 0;
  std::size_t clauses = 0;
  int vote_clip_t = 0;
  double specificity = 0.0;
  std::size_t num_states = 0;
  std::size_t vocab_size = 0;
  std::size_t threads = 0;
  bool deterministic = false;
  bool export_json = false;
};

int cmd_train(const TrainArgs& a, const CLI::App& sub, std::ostream& out) {
  RunConfig cfg;
  if (!a.config.empty()) apply_config_file(cfg, a.config);
  if (sub.count("--train")) cfg.train_path = a.train_path;
  if (sub.count("--test")) cfg.test_path = a.test_path;
  if (sub.count("--out-dir")) cfg.out_dir = a.out_dir;
  if (sub.count("--seed")) cfg.seed = a.seed;
  if (sub.count("--epochs")) cfg.epochs = a.epochs;
  if (sub.count("--clauses")) cfg.model.clauses_per_class = a.clauses;
  if (sub.count("--T")) cfg.model.vote_clip_t = a.vote_clip_t;
  if (sub.count("--s")) cfg.model.specificity_s = a.specificity;
  if (sub.count("--states")) cfg.model.num_states = a.num_states;
  if (sub.count("--vocab-size")) cfg.vocab_max_size = a.vocab_size;
  if (sub.count("--threads")) cfg.threads = a.threads;
  if (a.deterministic) {
    cfg.deterministic = true;
    cfg.threads = 1;
  }
  cfg.model.seed = cfg.seed;
  cfg.validate();
  if (cfg.train_path.empty()) throw ConfigError("no training data given (--train or train_path)");

  const Dataset train = load_dataset(cfg.train_path, format_from_path(cfg.train_path));
  if (train.documents.empty()) throw DataError("training data " + cfg.train_path + " is empty");
  if (train.labels.size() < 2) throw DataError("training data needs at least two labels");
  std::optional<Dataset> test;
  if (!cfg.test_path.empty()) {
    test = load_dataset(cfg.test_path, format_from_path(cfg.test_path), train.labels);
  }

  std::vector<std::vector<std::string>> corpus;
  for (const auto& d : train.documents) corpus.push_back(d.tokens);
  const Vocabulary vocab = build_vocabulary(corpus, cfg.vocab_max_size);

  ModelConfig mc = cfg.model;
  mc.num_classes = train.labels.size();
  Model model(mc, vocab.size(), vocab.fingerprint());

  const auto train_bows = vectorize_dataset(train, vocab);
  std::vector<LabeledBow> test_bows;
  if (test) test_bows = vectorize_dataset(*test, vocab);

  const std::size_t threads = cfg.deterministic ? 1 : cfg.threads;
  const std::string config_fp = fingerprint_hex(cfg.fingerprint());
  std::string log;
  double last_train_acc = 0.0;
  model = fit(std::move(model), train_bows, FitOptions{cfg.epochs, cfg.seed, true},
              [&](std::size_t epoch, const Model& m) {
                json line;
                line["epoch"] = epoch;
                last_train_acc = accuracy(m, train_bows, threads);
                line["train_accuracy"] = last_train_acc;
                if (!test_bows.empty()) line["test_accuracy"] = accuracy(m, test_bows, threads);
                line["config_fingerprint"] = config_fp;
                log += line.dump() + "\n";
              });

  ensure_dir(cfg.out_dir);
  const fs::path dir(cfg.out_dir);
  save_model(model, dir / "model.tm");
  vocab.save(dir / "vocab.txt");
  save_labels(train.labels, dir / "labels.txt");
  write_text(dir / "train_log.jsonl", log);
  write_text(dir / "run_config.txt", "# config_fingerprint " + config_fp + "\n" + cfg.to_text());
  if (a.export_json) write_text(dir / "model.json", model_to_json(model).dump(1) + "\n");

  out << "trained " << mc.total_clauses() << " clauses over " << vocab.size() << " words for "
      << cfg.epochs << " epochs; final train accuracy " << last_train_acc << "\n";
  out << "wrote " << (dir / "model.tm").string() << "\n";
  return 0;
}

// ---- prune ----------------------------------------------------------------

struct PruneArgs {
  std::string model;
  std::string vocab;
  std::string config;
  std::string fraction;
  std::string sweep;
  std::string out_dir;
};

int cmd_prune(const PruneArgs& a, std::ostream& out) {
  std::vector<double> fractions;
  if (!a.fraction.empty()) {
    fractions = parse_fraction_list(a.fraction);
  } else if (!a.sweep.empty()) {
    fractions = parse_fraction_list(a.sweep);
  } else if (!a.config.empty()) {
    RunConfig cfg;
    apply_config_file(cfg, a.config);
    fractions = cfg.prune_fractions;
  }
  if (fractions.empty()) throw ConfigError("give --fraction, --sweep or prune_fractions in --config");
  for (double f : fractions) {
    if (!(f >= 0.0 && f <= 0.5)) {
      throw ConfigError("prune fraction " + std::to_string(f) + " outside [0, 0.5]");
    }
  }

  const Model base = load_model(a.model);
  std::optional<Vocabulary> vocab;
  const fs::path vocab_path = sidecar(a.vocab, a.model, "vocab.txt");
  if (!a.vocab.empty() || fs::exists(vocab_path)) vocab = load_bound_vocab(a.model, base, a.vocab);

  const fs::path dir = a.out_dir.empty() ? fs::path(a.model).parent_path() : fs::path(a.out_dir);
  if (!dir.empty()) ensure_dir(dir.string());
  const std::string stem = fs::path(a.model).stem().string();
  for (double f : fractions) {
    const PruneResult result = prune(base, f);
    const std::string name = stem + ".pruned-" + percent_tag(f);
    save_model(result.model, dir / (name + ".model"));
    json report;
    report["base_model"] = fs::path(a.model).filename().string();
    report["vocab_fingerprint"] = fingerprint_hex(base.vocab_fingerprint());
    Fnv1a64 h;
    const auto bytes = serialize_model(base);
    h.update(std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
    report["base_model_fingerprint"] = fingerprint_hex(h.digest());
    const json body = prune_report_to_json(result.report, vocab ? &*vocab : nullptr);
    for (const auto& [k, v] : body.items()) report[k] = v;
    write_text(dir / (name + ".report.json"), report.dump(1) + "\n");
    out << "pruned " << result.report.pruned.size() << " of " << result.report.ranked_literals
        << " literals at " << percent_tag(f) << "% -> " << (dir / (name + ".model")).string()
        << "\n";
  }
  return 0;
}

// ---- explain --------------------------------------------------------------

struct ExplainArgs {
  std::string model;
  std::string vocab;
  std::string labels;
  std::string input;
  std::string mode = "comprehensiveness";
  std::string out_path;
  std::size_t threads = 1;
  bool deterministic = false;
};

int cmd_explain(const ExplainArgs& a, std::ostream& out) {
  const AttentionMode mode = parse_mode(a.mode);
  if (mode == AttentionMode::kHuman) throw ConfigError("explain mode must be a machine mode");
  const Model model = load_model(a.model);
  const Vocabulary vocab = load_bound_vocab(a.model, model, a.vocab);
  const std::vector<std::string> labels = load_bound_labels(a.model, model, a.labels);

  std::ifstream in(a.input);
  if (!in) throw DataError("cannot open input " + a.input);
  std::vector<std::vector<std::string>> tokens;
  std::vector<std::vector<std::optional<std::size_t>>> ids;
  std::size_t row = 0;
  for (std::string line; std::getline(in, line);) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw DataError("row " + std::to_string(row) + ": malformed JSON: " + e.what());
    }
    if (!j.is_object() || !j.contains("text") || !j["text"].is_string()) {
      throw DataError("row " + std::to_string(row) + ": expected an object with a text field");
    }
    tokens.push_back(tokenize(j["text"].get<std::string>()));
    ids.push_back(encode(tokens.back(), vocab));
    ++row;
  }

  const auto maps = tam_batch(model, ids, mode, a.deterministic ? 1 : a.threads);
  json doc;
  doc["mode"] = mode_name(mode);
  doc["model"] = fs::path(a.model).filename().string();
  doc["vocab_fingerprint"] = fingerprint_hex(vocab.fingerprint());
  json docs = json::array();
  for (std::size_t i = 0; i < ids.size(); ++i) {
    const BooleanBow x = vectorize_ids(ids[i], vocab.size());
    const std::size_t predicted = predict(model, x);
    json d;
    d["row"] = i;
    d["predicted"] = labels[predicted];
    d["confidence"] = model_confidence(model, x, predicted);
    json pairs = json::array();
    for (std::size_t k = 0; k < tokens[i].size(); ++k) {
      pairs.push_back({{"token", tokens[i][k]}, {"score", maps[i].scores[k]}});
    }
    d["tokens"] = std::move(pairs);
    docs.push_back(std::move(d));
  }
  doc["documents"] = std::move(docs);
  const std::string text = doc.dump(1) + "\n";
  if (a.out_path.empty()) {
    out << text;
  } else {
    write_text(a.out_path, text);
  }
  return 0;
}

// ---- eval -----------------------------------------------------------------

struct EvalArgs {
  std::vector<std::string> models;
  std::string vocab;
  std::string labels;
  std::string dataset;
  std::string metric = "none";
  std::string annotator = "all";
  std::string out_dir = ".";
  std::string config;
  std::size_t threads = 1;
  bool deterministic = false;
};

int cmd_eval(const EvalArgs& a, const CLI::App& sub, std::ostream& out) {
  RunConfig cfg;
  if (!a.config.empty()) {
    apply_config_file(cfg, a.config);
  } else {
    cfg.metric = "none";
  }
  if (sub.count("--metric")) cfg.metric = a.metric;
  if (sub.count("--annotator")) cfg.annotator = a.annotator;
  if (sub.count("--out-dir")) cfg.out_dir = a.out_dir;
  if (sub.count("--threads")) cfg.threads = a.threads;
  if (a.deterministic) cfg.deterministic = true;
  cfg.validate();
  const std::size_t threads = cfg.deterministic ? 1 : cfg.threads;

  std::vector<Model> models;
  for (const auto& path : a.models) models.push_back(load_model(path));
  const Vocabulary vocab = load_bound_vocab(a.models.front(), models.front(), a.vocab);
  for (std::size_t i = 1; i < models.size(); ++i) {
    if (models[i].vocab_fingerprint() != vocab.fingerprint()) {
      throw FormatError("model " + a.models[i] + " is bound to a different vocabulary");
    }
  }
  const auto labels = load_bound_labels(a.models.front(), models.front(), a.labels);
  const Dataset data = load_dataset(a.dataset, format_from_path(a.dataset), labels);
  if (data.documents.empty()) throw DataError("dataset " + a.dataset + " is empty");

  std::vector<std::size_t> annotator_ids;
  if (cfg.metric != "none") {
    const std::size_t available = data.annotator_count();
    if (available == 0) {
      throw DataError("similarity metric '" + cfg.metric + "' needs human attention maps, but " +
                      a.dataset + " has none");
    }
    if (cfg.annotator == "all") {
      for (std::size_t i = 0; i < available; ++i) annotator_ids.push_back(i);
    } else {
      const std::size_t id = std::stoul(cfg.annotator) - 1;
      if (id >= available) {
        throw DataError("annotator " + cfg.annotator + " requested but the dataset has " +
                        std::to_string(available));
      }
      annotator_ids.push_back(id);
    }
  }

  ensure_dir(cfg.out_dir);
  const fs::path dir(cfg.out_dir);
  const auto bows = vectorize_dataset(data, vocab);
  std::vector<std::string> names;
  std::vector<std::optional<double>> fractions;
  std::ostringstream acc_csv;
  acc_csv << "model_variant,prune_fraction,accuracy,dataset\n";
  for (std::size_t m = 0; m < models.size(); ++m) {
    const std::string stem = fs::path(a.models[m]).stem().string();
    names.push_back(stem);
    fractions.push_back(fraction_from_name(stem).value_or(0.0));
    const double acc = accuracy(models[m], bows, threads);
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", acc);
    acc_csv << stem << ',' << *fractions.back() << ',' << buf << ',' << data.split << '\n';
    out << stem << " accuracy " << buf << "\n";
  }
  write_text(dir / "accuracy.csv", acc_csv.str());

  json manifest;
  manifest["config_fingerprint"] = fingerprint_hex(cfg.fingerprint());
  manifest["vocab_fingerprint"] = fingerprint_hex(vocab.fingerprint());
  manifest["dataset"] = data.split;
  manifest["models"] = a.models;
  manifest["metric"] = cfg.metric;

  if (cfg.metric != "none") {
    const SimilarityMetric metric = parse_metric(cfg.metric);
    const AttentionMode mode = metric == SimilarityMetric::kComprehensiveness
                                   ? AttentionMode::kComprehensiveness
                                   : AttentionMode::kSufficiency;
    // Documents without tokens have no attention map to compare.
    std::vector<std::vector<std::optional<std::size_t>>> ids;
    std::vector<const Document*> docs;
    for (const auto& d : data.documents) {
      if (d.tokens.empty()) continue;
      ids.push_back(encode(d.tokens, vocab));
      docs.push_back(&d);
    }
    std::vector<NamedMaps> human;
    for (std::size_t id : annotator_ids) {
      NamedMaps h{"HAM" + std::to_string(id + 1), std::nullopt, {}};
      for (const Document* d : docs) h.maps.push_back(human_map(d->hams[id]));
      human.push_back(std::move(h));
    }
    std::vector<NamedMaps> machine;
    for (std::size_t m = 0; m < models.size(); ++m) {
      machine.push_back({names[m], fractions[m], tam_batch(models[m], ids, mode, threads)});
    }
    const SimilarityReport report = pairwise_table(human, machine, metric, data.split);
    const std::string base = "similarity_" + cfg.metric;
    write_text(dir / (base + ".csv"), report.to_csv());
    json j = report.to_json();
    j["config_fingerprint"] = manifest["config_fingerprint"];
    write_text(dir / (base + ".json"), j.dump(1) + "\n");
    out << report.to_text();
    manifest["documents_compared"] = docs.size();
  }
  write_text(dir / "eval_manifest.json", manifest.dump(1) + "\n");
  return 0;
}

// ---- inspect-clauses ------------------------------------------------------

struct InspectArgs {
  std::string model;
  std::string vocab;
  std::string labels;
  std::string sample;
  std::string diff;
  std::size_t count = 10;
};

int cmd_inspect(const InspectArgs& a, std::ostream& out) {
  const Model model = load_model(a.model);
  const Vocabulary vocab = load_bound_vocab(a.model, model, a.vocab);
  const auto labels = load_bound_labels(a.model, model, a.labels);
  std::optional<Model> pruned;
  if (!a.diff.empty()) {
    pruned = load_model(a.diff);
    if (pruned->vocab_fingerprint() != model.vocab_fingerprint() ||
        !pruned->config().same_shape_and_hyperparameters(model.config()) ||
        pruned->vocab_size() != model.vocab_size()) {
      throw FormatError("--diff model " + a.diff + " does not match " + a.model);
    }
  }

  std::vector<std::size_t> selected;
  if (!a.sample.empty()) {
    const BooleanBow x = vectorize(tokenize(a.sample), vocab);
    for (std::size_t c = 0; c < model.num_clauses(); ++c) {
      if (evaluate_clause(model, c, x)) selected.push_back(c);
    }
  } else {
    for (std::size_t c = 0; c < model.num_clauses(); ++c) selected.push_back(c);
    std::stable_sort(selected.begin(), selected.end(), [&](std::size_t l, std::size_t r) {
      return model.clause(l).include_count > model.clause(r).include_count;
    });
  }
  if (a.count > 0 && selected.size() > a.count) selected.resize(a.count);

  const LiteralFrequencyTable freq = literal_frequencies(model);
  if (pruned) out << "# [literal] = removed by pruning (" << a.diff << ")\n";
  for (std::size_t c : selected) {
    const ClauseView view = model.clause(c);
    out << "clause " << c << " class=" << labels[view.class_index]
        << " polarity=" << (view.polarity > 0 ? '+' : '-') << " literals=" << view.include_count;
    if (pruned) out << "->" << pruned->clause(c).include_count;
    out << "\n  " << render_clause(model, vocab, c, freq, pruned ? &*pruned : nullptr) << "\n";
  }
  if (selected.empty()) out << "(no clauses selected)\n";
  return 0;
}

// ---- synth ----------------------------------------------------------------

struct SynthArgs {
  std::string out_dir = ".";
  std::uint64_t seed = 42;
  std::size_t docs = 2000;
  std::size_t annotators = 1;
};

int cmd_synth(const SynthArgs& a, std::ostream& out) {
  SyntheticSpec spec;
  spec.seed = a.seed;
  spec.num_documents = a.docs;
  spec.annotators = a.annotators;
  const SyntheticSplit split = generate_synthetic_split(spec);
  ensure_dir(a.out_dir);
  save_dataset(split.train, fs::path(a.out_dir) / "train.jsonl", DatasetFormat::kJsonl);
  save_dataset(split.test, fs::path(a.out_dir) / "test.jsonl", DatasetFormat::kJsonl);
  out << "wrote " << split.train.documents.size() << " training and "
      << split.test.documents.size() << " test documents to " << a.out_dir << "\n";
  return 0;
}

}  // namespace

std::string percent_tag(double fraction) {
  const double pct = std::round(fraction * 100.0 * 1e6) / 1e6;
  char buf[32];
  if (pct == std::floor(pct)) {
    std::snprintf(buf, sizeof(buf), "%d", static_cast<int>(pct));
  } else {
    std::snprintf(buf, sizeof(buf), "%g", pct);
  }
  return buf;
}

std::string render_clause(const Model& model, const Vocabulary& vocab, std::size_t clause,
                          const LiteralFrequencyTable& frequencies, const Model* pruned) {
  std::vector<std::size_t> literals;
  for (std::size_t j = 0; j < model.literal_count(); ++j) {
    if (model.includes(clause, j)) literals.push_back(j);
  }
  if (literals.empty()) return "(empty)";
  std::stable_sort(literals.begin(), literals.end(), [&](std::size_t l, std::size_t r) {
    return frequencies.count[l] > frequencies.count[r];
  });
  std::string out;
  for (std::size_t i = 0; i < literals.size(); ++i) {
    if (i) out += " ∧ ";
    const std::string name = literal_name(literals[i], vocab);
    if (pruned != nullptr && !pruned->includes(clause, literals[i])) {
      out += "[" + name + "]";
    } else {
      out += name;
    }
  }
  return out;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Tsetlin Machine text classifier with literal pruning and attention maps",
               "tmprune"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  TrainArgs train;
  auto* train_cmd = app.add_subcommand("train", "train a model on a labeled dataset");
  train_cmd->add_option("--config", train.config, "key = value config file");
  train_cmd->add_option("--train", train.train_path, "training dataset (.jsonl or .csv)");
  train_cmd->add_option("--test", train.test_path, "optional test dataset, logged per epoch");
  train_cmd->add_option("--out-dir", train.out_dir, "output directory");
  train_cmd->add_option("--seed", train.seed, "random seed");
  train_cmd->add_option("--epochs", train.epochs, "training epochs");
  train_cmd->add_option("--clauses", train.clauses, "clauses per class (even)");
  train_cmd->add_option("--T", train.vote_clip_t, "vote clipping threshold");
  train_cmd->add_option("--s", train.specificity, "specificity (> 1)");
  train_cmd->add_option("--states", train.num_states, "automaton states (even, <= 256)");
  train_cmd->add_option("--vocab-size", train.vocab_size, "maximum vocabulary size");
  train_cmd->add_option("--threads", train.threads, "threads for accuracy logging");
  train_cmd->add_flag("--deterministic", train.deterministic, "single-threaded everywhere");
  train_cmd->add_flag("--export-json", train.export_json, "also write model.json");

  PruneArgs prune_args;
  auto* prune_cmd = app.add_subcommand("prune", "prune least frequent literals");
  prune_cmd->add_option("--model", prune_args.model, "model file")->required();
  prune_cmd->add_option("--vocab", prune_args.vocab, "vocabulary (default: next to model)");
  prune_cmd->add_option("--config", prune_args.config, "config file with prune_fractions");
  auto* fraction_opt =
      prune_cmd->add_option("--fraction", prune_args.fraction, "fraction in [0, 0.5]");
  prune_cmd->add_option("--sweep", prune_args.sweep, "start:stop:step or comma list")
      ->excludes(fraction_opt);
  prune_cmd->add_option("--out-dir", prune_args.out_dir, "output directory");

  ExplainArgs explain;
  auto* explain_cmd = app.add_subcommand("explain", "per-token attention maps");
  explain_cmd->add_option("--model", explain.model, "model file")->required();
  explain_cmd->add_option("--vocab", explain.vocab, "vocabulary (default: next to model)");
  explain_cmd->add_option("--labels", explain.labels, "labels (default: next to model)");
  explain_cmd->add_option("--input", explain.input, "JSONL with a text field per row")->required();
  explain_cmd->add_option("--mode", explain.mode, "comprehensiveness or sufficiency");
  explain_cmd->add_option("--out", explain.out_path, "output file (default: stdout)");
  explain_cmd->add_option("--threads", explain.threads, "worker threads");
  explain_cmd->add_flag("--deterministic", explain.deterministic, "single-threaded");

  EvalArgs eval;
  auto* eval_cmd = app.add_subcommand("eval", "accuracy and attention-map similarity");
  eval_cmd->add_option("--model", eval.models, "model file(s)")->required();
  eval_cmd->add_option("--dataset", eval.dataset, "labeled dataset")->required();
  eval_cmd->add_option("--vocab", eval.vocab, "vocabulary (default: next to first model)");
  eval_cmd->add_option("--labels", eval.labels, "labels (default: next to first model)");
  eval_cmd->add_option("--metric", eval.metric, "comprehensiveness, sufficiency or none");
  eval_cmd->add_option("--annotator", eval.annotator, "1, 2, 3 or all");
  eval_cmd->add_option("--out-dir", eval.out_dir, "output directory");
  eval_cmd->add_option("--config", eval.config, "config file");
  eval_cmd->add_option("--threads", eval.threads, "worker threads");
  eval_cmd->add_flag("--deterministic", eval.deterministic, "single-threaded");

  InspectArgs inspect;
  auto* inspect_cmd = app.add_subcommand("inspect-clauses", "print clauses as conjunctions");
  inspect_cmd->add_option("--model", inspect.model, "model file")->required();
  inspect_cmd->add_option("--vocab", inspect.vocab, "vocabulary (default: next to model)");
  inspect_cmd->add_option("--labels", inspect.labels, "labels (default: next to model)");
  inspect_cmd->add_option("--sample", inspect.sample, "only clauses that fire on this text");
  inspect_cmd->add_option("--count", inspect.count, "clauses to print (0 = all)");
  inspect_cmd->add_option("--diff", inspect.diff, "pruned model; removed literals in [ ]");

  SynthArgs synth;
  auto* synth_cmd = app.add_subcommand("synth", "write the planted-keyword benchmark");
  synth_cmd->add_option("--out-dir", synth.out_dir, "output directory");
  synth_cmd->add_option("--seed", synth.seed, "random seed");
  synth_cmd->add_option("--docs", synth.docs, "documents in total (75/25 split)");
  synth_cmd->add_option("--annotators", synth.annotators, "annotators per document");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return static_cast<int>(ErrorKind::kConfig);
  }

  try {
    if (*train_cmd) return cmd_train(train, *train_cmd, out);
    if (*prune_cmd) return cmd_prune(prune_args, out);
    if (*explain_cmd) return cmd_explain(explain, out);
    if (*eval_cmd) return cmd_eval(eval, *eval_cmd, out);
    if (*inspect_cmd) return cmd_inspect(inspect, out);
    if (*synth_cmd) return cmd_synth(synth, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return static_cast<int>(ErrorKind::kConfig);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace tmprune
