#include "cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <ostream>
#include <set>
#include <sstream>

#include "crfae/checkpoint.hpp"
#include "crfae/corpus.hpp"
#include "crfae/crfae.hpp"
#include "crfae/embeddings.hpp"
#include "crfae/error.hpp"
#include "crfae/features.hpp"
#include "crfae/fhmm.hpp"
#include "crfae/hmm.hpp"
#include "crfae/metrics.hpp"
#include "crfae/pipeline.hpp"
#include "crfae/synthetic.hpp"

namespace crfae::cli {
namespace {

namespace fs = std::filesystem;
using KeyValues = std::map<std::string, std::string>;

const std::set<std::string> kConfigKeys = {
    "corpus",      "dev",         "emb",          "dev_emb",      "out",        "stage",
    "seed",        "jobs",        "tags",         "mode",         "language",   "cutoff",
    "cutoff_reference", "suffix_rules", "batch_words", "max_epochs", "pretrain_epochs", "beta1",
    "beta2",       "adam_eps",    "clip",         "lr_hmm",       "lr_fhmm",    "lr_pretrain",
    "lr_encoder",  "lr_decoder",  "lr_decay",     "lr_decay_epochs", "l2",      "three_stage",
    "layers",      "bottleneck",  "dropout",      "leaky_slope",  "ln_eps",     "minus",
};

std::string trim(std::string_view s) {
  const auto* ws = " \t\r";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return std::string(s.substr(b, e - b + 1));
}

/// Flat `key = value` file; `#` starts a comment line.
KeyValues read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config file " + path);
  KeyValues kv;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    auto eq = t.find('=');
    if (eq == std::string::npos) throw ParseError(path, line_no, "expected key=value");
    std::string key = trim(std::string_view(t).substr(0, eq));
    if (!kConfigKeys.count(key)) throw ParseError(path, line_no, "unknown key '" + key + "'");
    kv[key] = trim(std::string_view(t).substr(eq + 1));
  }
  return kv;
}

class Settings {
 public:
  explicit Settings(KeyValues kv) : kv_(std::move(kv)) {}

  bool has(const std::string& key) const { return kv_.count(key) && !kv_.at(key).empty(); }
  std::string str(const std::string& key, const std::string& fallback = "") const {
    return has(key) ? kv_.at(key) : fallback;
  }

  template <class T>
  T number(const std::string& key, T fallback) const {
    if (!has(key)) return fallback;
    const std::string& s = kv_.at(key);
    T value{};
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
      throw InputError("bad value '" + s + "' for " + key);
    }
    return value;
  }

  bool flag(const std::string& key, bool fallback) const {
    if (!has(key)) return fallback;
    const std::string& s = kv_.at(key);
    if (s == "1" || s == "true" || s == "yes" || s == "on") return true;
    if (s == "0" || s == "false" || s == "no" || s == "off") return false;
    throw InputError("bad boolean '" + s + "' for " + key);
  }

 private:
  KeyValues kv_;
};

/// String-valued flags that mirror config keys; set flags override the file.
class FlagSet {
 public:
  void add(CLI::App* app, const std::string& flag, const std::string& key, const std::string& help) {
    options_.emplace_back(app->add_option(flag, values_[key], help), key);
  }
  void overlay(KeyValues& kv) const {
    for (const auto& [opt, key] : options_) {
      if (opt->count() > 0) kv[key] = values_.at(key);
    }
  }

 private:
  std::map<std::string, std::string> values_;
  std::vector<std::pair<CLI::Option*, std::string>> options_;
};

void require_file(const std::string& path, const std::string& what) {
  if (!fs::is_regular_file(path)) throw InputError(what + " not found: " + path);
}

bool is_conllu(const std::string& path) {
  return fs::path(path).extension() == ".conllu";
}

/// A vertical file is tagged when its first token line has a tab.
bool vertical_has_tags(const std::string& path) {
  std::ifstream in(path);
  std::string line;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    return line.find('\t') != std::string::npos;
  }
  return false;
}

Corpus load_corpus(const std::string& path, LoadOptions opts) {
  require_file(path, "corpus");
  if (is_conllu(path)) return load_conllu(path, opts);
  opts.has_tags = vertical_has_tags(path);
  return load_vertical(path, opts);
}

std::vector<std::uint32_t> parse_layers(const std::string& text) {
  std::vector<std::uint32_t> layers;
  if (text.empty() || text == "all") return layers;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::uint32_t k = 0;
    auto t = trim(item);
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), k);
    if (ec != std::errc() || ptr != t.data() + t.size()) throw InputError("bad layer list '" + text + "'");
    layers.push_back(k);
  }
  return layers;
}

FeatureConfig feature_config(const Settings& s) {
  FeatureConfig fc;
  fc.mode = parse_feature_mode(s.str("mode", "wsj"));
  fc.language = s.str("language", "none");
  fc.cutoff = s.number<int>("cutoff", 50);
  if (fc.cutoff < 0) throw InputError("cutoff must be non-negative");
  fc.apply_language_suffix_rules = s.flag("suffix_rules", fc.mode == FeatureMode::kUd);
  return fc;
}

TrainConfig train_config(const Settings& s) {
  TrainConfig c;
  c.tags = s.number<std::size_t>("tags", c.tags);
  c.batch_words = s.number<std::size_t>("batch_words", c.batch_words);
  c.max_epochs = s.number<int>("max_epochs", c.max_epochs);
  c.pretrain_epochs = s.number<int>("pretrain_epochs", c.pretrain_epochs);
  c.adam.beta1 = s.number<double>("beta1", c.adam.beta1);
  c.adam.beta2 = s.number<double>("beta2", c.adam.beta2);
  c.adam.eps = s.number<double>("adam_eps", c.adam.eps);
  c.adam.clip = s.number<double>("clip", c.adam.clip);
  c.lr_hmm = s.number<double>("lr_hmm", c.lr_hmm);
  c.lr_fhmm = s.number<double>("lr_fhmm", c.lr_fhmm);
  c.lr_pretrain = s.number<double>("lr_pretrain", c.lr_pretrain);
  c.lr_encoder = s.number<double>("lr_encoder", c.lr_encoder);
  c.lr_decoder = s.number<double>("lr_decoder", c.lr_decoder);
  c.lr_decay = s.number<double>("lr_decay", c.lr_decay);
  c.lr_decay_epochs = s.number<double>("lr_decay_epochs", c.lr_decay_epochs);
  c.l2 = s.number<double>("l2", c.l2);
  c.three_stage = s.flag("three_stage", c.three_stage);
  c.seed = s.number<std::uint64_t>("seed", 0);
  c.jobs = s.number<int>("jobs", 1);
  c.encoder.layers = parse_layers(s.str("layers"));
  c.encoder.bottleneck = s.number<std::size_t>("bottleneck", c.encoder.bottleneck);
  c.encoder.dropout = s.number<double>("dropout", c.encoder.dropout);
  c.encoder.leaky_slope = s.number<double>("leaky_slope", c.encoder.leaky_slope);
  c.encoder.layer_norm_eps = s.number<double>("ln_eps", c.encoder.layer_norm_eps);
  c.encoder.minus = s.flag("minus", c.encoder.minus);
  c.validate();
  return c;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << text;
  if (!out) throw InputError("error writing " + path);
}

void check_output_dir(const std::string& path) {
  auto dir = fs::path(path).parent_path();
  if (!dir.empty() && !fs::is_directory(dir)) throw InputError("output directory does not exist: " + dir.string());
}

std::string vocab_path(const std::string& model) { return model + ".vocab"; }
std::string features_path(const std::string& model) { return model + ".features"; }

int cmd_train(const KeyValues& kv_in, std::ostream& out) {
  Settings s(kv_in);
  if (!s.has("corpus")) throw InputError("--corpus is required");
  if (!s.has("out")) throw InputError("--out is required");
  const Stage stage = parse_stage(s.str("stage", "crfae"));
  const bool needs_emb = stage == Stage::kPretrain || stage == Stage::kCrfAe;
  const std::string corpus_path = s.str("corpus");
  const std::string out_path = s.str("out");

  // Validate every path before any work.
  require_file(corpus_path, "corpus");
  if (s.has("dev")) require_file(s.str("dev"), "dev corpus");
  if (needs_emb) {
    if (!s.has("emb")) throw InputError("--emb is required for stage " + to_string(stage));
    require_file(s.str("emb"), "embedding file");
    if (s.has("dev")) {
      if (!s.has("dev_emb")) throw InputError("--dev-emb is required with --dev for stage " + to_string(stage));
      require_file(s.str("dev_emb"), "dev embedding file");
    }
  }
  check_output_dir(out_path);
  TrainConfig config = train_config(s);
  FeatureConfig fc = feature_config(s);

  auto tagset = std::make_shared<TagSet>();
  LoadOptions opts;
  opts.tagset = tagset;
  Corpus train = load_corpus(corpus_path, opts);
  std::optional<Corpus> dev;
  if (s.has("dev")) {
    opts.vocab = train.vocab;
    dev = load_corpus(s.str("dev"), opts);
  }
  const int reference = s.number<int>("cutoff_reference", 0);
  if (reference > 0) {
    fc.cutoff = scaled_cutoff(train.num_tokens(), static_cast<std::size_t>(reference), fc.cutoff);
  }

  FeatureIndex index = build_feature_index(train, fc);
  std::ostringstream index_text;
  index.write(index_text);
  Featurizer featurizer(train.vocab, std::move(index), fc);

  std::unique_ptr<EmbeddingFile> train_emb;
  std::unique_ptr<EmbeddingFile> dev_emb;
  if (needs_emb) {
    train_emb = std::make_unique<EmbeddingFile>(s.str("emb"));
    check_alignment(*train_emb, train);
    if (dev) {
      dev_emb = std::make_unique<EmbeddingFile>(s.str("dev_emb"));
      check_alignment(*dev_emb, *dev);
    }
  }

  TrainData data;
  data.train = &train;
  data.dev = dev ? &*dev : nullptr;
  data.featurizer = &featurizer;
  data.train_embeddings = train_emb.get();
  data.dev_embeddings = dev_emb.get();

  PipelineResult result = run_pipeline(data, config, stage);
  Checkpoint ckpt = make_checkpoint(result, config, parse_fingerprint(fc.fingerprint()));
  save_checkpoint(out_path, ckpt);
  std::ostringstream vocab_text;
  train.vocab->write(vocab_text);
  write_text(vocab_path(out_path), vocab_text.str());
  write_text(features_path(out_path), index_text.str());
  write_text(out_path + ".log", format_epoch_log(result.log));

  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", result.log_likelihood);
  out << "model=" << model_kind(stage) << "\nepoch=" << result.epoch << "\nll=" << buf << "\ncheckpoint=" << out_path
      << "\n";
  return 0;
}

FeatureConfig feature_config_from(const Fingerprint& fp) {
  KeyValues kv;
  for (const char* key : {"mode", "language", "cutoff"}) {
    if (fp.count(key)) kv[key] = fp.at(key);
  }
  FeatureConfig fc = feature_config(Settings(kv));
  if (fp.count("suffix_rules")) fc.apply_language_suffix_rules = fp.at("suffix_rules") == "1";
  return fc;
}

int cmd_tag(const KeyValues& kv_in, const std::string& model_path, bool allow_mismatch, std::ostream& out,
            std::ostream& err) {
  Settings s(kv_in);
  if (!s.has("corpus")) throw InputError("--corpus is required");
  require_file(model_path, "checkpoint");
  require_file(s.str("corpus"), "corpus");
  if (s.has("out")) check_output_dir(s.str("out"));

  Fingerprint expected;
  for (const char* key : {"mode", "language", "cutoff", "tags"}) {
    if (s.has(key)) expected[key] = s.str(key);
  }
  Checkpoint ckpt = load_checkpoint(model_path, &expected, allow_mismatch, &err);
  const std::string kind = ckpt.fingerprint.count("model") ? ckpt.fingerprint.at("model") : "";
  if (kind != "hmm" && kind != "fhmm" && kind != "crfae") {
    throw FormatError(model_path + ": unknown model kind '" + kind + "'");
  }

  require_file(vocab_path(model_path), "vocabulary file");
  auto vocab = std::make_shared<const Vocabulary>(Vocabulary::read(vocab_path(model_path)));
  LoadOptions opts;
  opts.vocab = vocab;
  opts.allow_empty = true;
  Corpus corpus = load_corpus(s.str("corpus"), opts);
  const int jobs = s.number<int>("jobs", 1);
  if (jobs < 1) throw InputError("jobs must be positive");

  std::vector<std::vector<TagId>> tags;
  if (corpus.size() > 0) {
    if (kind == "hmm") {
      HmmParams p;
      ckpt.restore(p);
      if (static_cast<std::size_t>(p.emit.cols()) != vocab->size()) {
        throw MismatchError("checkpoint emission table has " + std::to_string(p.emit.cols()) +
                            " words, vocabulary has " + std::to_string(vocab->size()));
      }
      tags = hmm_decode(p, corpus, jobs);
    } else {
      require_file(features_path(model_path), "feature index");
      FeatureConfig fc = feature_config_from(ckpt.fingerprint);
      Featurizer fz(vocab, FeatureIndex::read(features_path(model_path)), fc);
      if (kind == "fhmm") {
        FhmmParams p;
        ckpt.restore(p);
        if (static_cast<std::size_t>(p.theta.cols()) != fz.num_features()) {
          throw MismatchError("checkpoint has " + std::to_string(p.theta.cols()) + " feature weights, index has " +
                              std::to_string(fz.num_features()));
        }
        tags = fhmm_decode(p, corpus, fz, jobs);
      } else {
        if (!s.has("emb")) throw InputError("--emb is required to tag with an autoencoder checkpoint");
        require_file(s.str("emb"), "embedding file");
        CrfAeParams p;
        ckpt.restore(p);
        if (static_cast<std::size_t>(p.theta.cols()) != fz.num_features()) {
          throw MismatchError("checkpoint has " + std::to_string(p.theta.cols()) + " feature weights, index has " +
                              std::to_string(fz.num_features()));
        }
        EncoderConfig enc;
        const auto& fp = ckpt.fingerprint;
        if (fp.count("layers")) enc.layers = parse_layers(fp.at("layers"));
        if (fp.count("minus")) enc.minus = fp.at("minus") == "1";
        Settings fs_settings(KeyValues(fp.begin(), fp.end()));
        enc.leaky_slope = fs_settings.number<double>("leaky_slope", enc.leaky_slope);
        enc.layer_norm_eps = fs_settings.number<double>("ln_eps", enc.layer_norm_eps);
        enc.bottleneck = static_cast<std::size_t>(p.w_mlp.cols());
        EmbeddingFile emb(s.str("emb"));
        check_alignment(emb, corpus);
        tags = joint_decode(p, enc, corpus, emb, fz, jobs);
      }
    }
  }

  if (s.has("out")) {
    std::ofstream file(s.str("out"), std::ios::binary);
    if (!file) throw InputError("cannot write " + s.str("out"));
    write_vertical(file, corpus, &tags);
  } else {
    write_vertical(out, corpus, &tags);
  }
  return 0;
}

/// Predicted-index file: words plus integer tags.
TagSequences load_predictions(const std::string& path, const Corpus& gold) {
  require_file(path, "prediction file");
  LoadOptions opts;
  opts.allow_empty = true;
  Corpus pred = load_vertical(path, opts);
  if (pred.size() != gold.size()) {
    throw MismatchError(path + ": " + std::to_string(pred.size()) + " sentences, gold has " +
                        std::to_string(gold.size()));
  }
  TagSequences out(pred.size());
  for (std::size_t s = 0; s < pred.size(); ++s) {
    const auto& ps = pred.sentences[s];
    const auto& gs = gold.sentences[s];
    if (ps.size() != gs.size()) {
      throw MismatchError(path + ": sentence " + std::to_string(s) + " has " + std::to_string(ps.size()) +
                          " tokens, gold has " + std::to_string(gs.size()));
    }
    for (std::size_t i = 0; i < ps.size(); ++i) {
      if (ps.words[i] != gs.words[i]) {
        throw MismatchError(path + ": sentence " + std::to_string(s) + " token " + std::to_string(i) + " is '" +
                            ps.words[i] + "', gold has '" + gs.words[i] + "'");
      }
      const std::string& name = pred.gold_tagset->name(ps.gold_tags[i]);
      TagId id = -1;
      auto [ptr, ec] = std::from_chars(name.data(), name.data() + name.size(), id);
      if (ec != std::errc() || ptr != name.data() + name.size() || id < 0) {
        throw FormatError(path + ": sentence " + std::to_string(s) + " token " + std::to_string(i) +
                          ": predicted tag '" + name + "' is not a non-negative integer");
      }
      out[s].push_back(id);
    }
  }
  return out;
}

Corpus load_gold(const std::string& path, const std::shared_ptr<TagSet>& tagset) {
  LoadOptions opts;
  opts.tagset = tagset;
  opts.allow_empty = true;
  Corpus c = load_corpus(path, opts);
  if (c.size() > 0 && !c.has_tags()) throw InputError(path + ": gold file has no tag column");
  return c;
}

int cmd_evaluate(const std::string& gold_path, const std::string& pred_path, const std::string& test_gold_path,
                 const std::string& test_pred_path, const std::vector<std::string>& mapping_from, std::ostream& out) {
  if (test_gold_path.empty() != test_pred_path.empty()) {
    throw InputError("--test-gold and --test-pred must be given together");
  }
  auto tagset = std::make_shared<TagSet>();
  Corpus gold = load_gold(gold_path, tagset);
  TagSequences pred = load_predictions(pred_path, gold);
  std::optional<Corpus> test_gold;
  TagSequences test_pred;
  if (!test_gold_path.empty()) {
    test_gold = load_gold(test_gold_path, tagset);
    test_pred = load_predictions(test_pred_path, *test_gold);
  }

  EvalReport report;
  if (!mapping_from.empty()) {
    Corpus map_gold = load_gold(mapping_from[1], tagset);
    TagSequences map_pred = load_predictions(mapping_from[0], map_gold);
    report.mapping = m1_mapping(build_contingency(map_gold.gold_sequences(), map_pred));
    report.mapping.source = "mapping-from";
    report.dev = evaluate_split(gold.gold_sequences(), pred, report.mapping);
    if (test_gold) report.test = evaluate_split(test_gold->gold_sequences(), test_pred, report.mapping);
  } else {
    const auto dev_gold = gold.gold_sequences();
    const auto test_gold_seq = test_gold ? test_gold->gold_sequences() : TagSequences{};
    report = evaluate_run(dev_gold, pred, test_gold ? &test_gold_seq : nullptr, test_gold ? &test_pred : nullptr);
  }
  if (gold.num_tokens() == 0) throw InputError(gold_path + ": no tokens to evaluate");
  out << format_report(report);
  return 0;
}

int cmd_synth_embed(const std::string& corpus_path, int dim, std::uint64_t seed, const std::string& out_path) {
  if (dim <= 0 || dim % 2 != 0) throw InputError("--dim must be a positive even number, got " + std::to_string(dim));
  check_output_dir(out_path);
  LoadOptions opts;
  opts.allow_empty = true;
  Corpus corpus = load_corpus(corpus_path, opts);
  write_embeddings(out_path, synth_embed(corpus, static_cast<std::uint32_t>(dim), seed));
  return 0;
}

int cmd_synth_corpus(const std::string& prefix, const SyntheticConfig& config) {
  check_output_dir(prefix);
  SyntheticData data = generate_synthetic(config);
  for (auto [name, corpus] : {std::pair<const char*, const Corpus*>{"train", &data.train},
                              {"dev", &data.dev},
                              {"test", &data.test}}) {
    std::ostringstream text;
    write_vertical(text, *corpus);
    write_text(prefix + "." + name + ".txt", text.str());
  }
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Unsupervised part-of-speech induction with a neural CRF autoencoder", "crfae-pos"};
  app.require_subcommand(1);

  // train
  auto* train = app.add_subcommand("train", "Train a model (three-stage pipeline or a single stage)");
  FlagSet train_flags;
  std::string config_path;
  train->add_option("--config", config_path, "key=value configuration file");
  train_flags.add(train, "--corpus", "corpus", "training corpus (vertical or .conllu)");
  train_flags.add(train, "--dev", "dev", "dev corpus used for epoch selection");
  train_flags.add(train, "--emb", "emb", "CWE1 embeddings of the training corpus");
  train_flags.add(train, "--dev-emb", "dev_emb", "CWE1 embeddings of the dev corpus");
  train_flags.add(train, "--out", "out", "checkpoint path");
  train_flags.add(train, "--stage", "stage", "hmm | fhmm | pretrain | crfae");
  train_flags.add(train, "--seed", "seed", "random seed (default 0)");
  train_flags.add(train, "--jobs", "jobs", "parallel workers");
  train_flags.add(train, "--tags", "tags", "number of induced tags");
  train_flags.add(train, "--mode", "mode", "feature mode: wsj | ud");
  train_flags.add(train, "--language", "language", "language code for suffix rules");
  train_flags.add(train, "--cutoff", "cutoff", "feature frequency cutoff");

  // tag
  auto* tag = app.add_subcommand("tag", "Tag a corpus with a trained checkpoint");
  FlagSet tag_flags;
  std::string model_path;
  bool allow_mismatch = false;
  tag->add_option("--model", model_path, "checkpoint written by train")->required();
  tag_flags.add(tag, "--corpus", "corpus", "corpus to tag");
  tag_flags.add(tag, "--emb", "emb", "CWE1 embeddings of the corpus (autoencoder models)");
  tag_flags.add(tag, "--out", "out", "output file (default stdout)");
  tag_flags.add(tag, "--jobs", "jobs", "parallel workers");
  tag_flags.add(tag, "--tags", "tags", "expected number of tags");
  tag_flags.add(tag, "--mode", "mode", "expected feature mode");
  tag_flags.add(tag, "--language", "language", "expected language code");
  tag_flags.add(tag, "--cutoff", "cutoff", "expected feature cutoff");
  tag->add_flag("--allow-fingerprint-mismatch", allow_mismatch, "warn instead of failing on configuration mismatch");

  // evaluate
  auto* evaluate = app.add_subcommand("evaluate", "Score predicted tag indexes against gold tags");
  std::string gold_path, pred_path, test_gold_path, test_pred_path;
  std::vector<std::string> mapping_from;
  evaluate->add_option("--gold", gold_path, "gold dev corpus")->required();
  evaluate->add_option("--pred", pred_path, "predicted dev tags")->required();
  evaluate->add_option("--test-gold", test_gold_path, "gold test corpus");
  evaluate->add_option("--test-pred", test_pred_path, "predicted test tags");
  evaluate->add_option("--mapping-from", mapping_from, "PRED GOLD files that fix the many-to-one mapping")
      ->expected(2);

  // synth-embed
  auto* synth = app.add_subcommand("synth-embed", "Write deterministic pseudo-embeddings for a corpus");
  std::string synth_corpus, synth_out;
  int synth_dim = 32;
  std::uint64_t synth_seed = 0;
  synth->add_option("--corpus", synth_corpus, "corpus")->required();
  synth->add_option("--dim", synth_dim, "vector width (even)");
  synth->add_option("--seed", synth_seed, "random seed");
  synth->add_option("--out", synth_out, "output CWE1 file")->required();

  // synth-corpus
  auto* synth_c = app.add_subcommand("synth-corpus", "Write a seeded synthetic tagged corpus (train/dev/test)");
  std::string synth_prefix;
  SyntheticConfig synth_config;
  synth_c->add_option("--out", synth_prefix, "output prefix; writes PREFIX.{train,dev,test}.txt")->required();
  synth_c->add_option("--seed", synth_config.seed, "random seed");
  synth_c->add_option("--train", synth_config.train_sentences, "training sentences");
  synth_c->add_option("--dev", synth_config.dev_sentences, "dev sentences");
  synth_c->add_option("--test", synth_config.test_sentences, "test sentences");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*train) {
      KeyValues kv;
      if (!config_path.empty()) kv = read_config_file(config_path);
      train_flags.overlay(kv);
      return cmd_train(kv, out);
    }
    if (*tag) {
      KeyValues kv;
      tag_flags.overlay(kv);
      return cmd_tag(kv, model_path, allow_mismatch, out, err);
    }
    if (*evaluate) return cmd_evaluate(gold_path, pred_path, test_gold_path, test_pred_path, mapping_from, out);
    if (*synth) return cmd_synth_embed(synth_corpus, synth_dim, synth_seed, synth_out);
    if (*synth_c) return cmd_synth_corpus(synth_prefix, synth_config);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace crfae::cli
