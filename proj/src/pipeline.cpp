#include "crfae/pipeline.hpp"

#include <charconv>
#include <numeric>
#include <sstream>

#include "crfae/error.hpp"
#include "crfae/fhmm.hpp"
#include "crfae/hash.hpp"

namespace crfae {
namespace {

constexpr std::uint64_t kSaltHmm = 11;
constexpr std::uint64_t kSaltFhmm = 12;
constexpr std::uint64_t kSaltPretrain = 13;
constexpr std::uint64_t kSaltCrfAe = 14;

std::string num(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

std::vector<std::size_t> all_indexes(const Corpus& corpus) {
  std::vector<std::size_t> idx(corpus.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  return idx;
}

/// Generic epoch loop. Epoch 0 is the initial state; epochs 1..n follow
/// one pass over shuffled batches each. `base_lr(group)` <= 0 freezes a group.
template <class P, class LrFn, class LossFn, class LlFn>
StageResult<P> run_stage(const std::string& name, std::uint64_t salt, P params, int epochs, bool select_best,
                         const Corpus& corpus, const TrainConfig& config, LrFn base_lr, LossFn loss, LlFn ll,
                         std::vector<EpochRecord>& log) {
  StageResult<P> best{params, 0, ll(params)};
  log.push_back({name, 0, best.log_likelihood});
  AdamState state;
  for (int epoch = 1; epoch <= epochs; ++epoch) {
    const std::uint64_t epoch_seed = hash_combine(hash_combine(config.seed, salt), static_cast<std::uint64_t>(epoch));
    auto batches = make_batches(corpus, config.batch_words, epoch_seed);
    for (std::size_t b = 0; b < batches.size(); ++b) {
      P grad;
      loss(params, batches[b], grad, hash_combine(epoch_seed, b));
      auto pt = params.tensors();
      auto gt = grad.tensors();
      std::vector<Matrix*> ps;
      std::vector<const Matrix*> gs;
      std::vector<double> lrs;
      for (std::size_t i = 0; i < pt.size(); ++i) {
        const double lr = base_lr(pt[i].group);
        if (lr <= 0.0) continue;
        ps.push_back(pt[i].value);
        gs.push_back(gt[i].value);
        lrs.push_back(lr_at_epoch(lr, epoch - 1, config.lr_decay, config.lr_decay_epochs));
      }
      adam_step(ps, gs, lrs, state, config.adam);
    }
    const double value = ll(params);
    log.push_back({name, epoch, value});
    if (!select_best || value > best.log_likelihood) best = {params, epoch, value};
  }
  return best;
}

const Corpus& ll_corpus(const TrainData& data) { return data.dev ? *data.dev : *data.train; }

const EmbeddingSource& ll_embeddings(const TrainData& data) {
  return data.dev ? *data.dev_embeddings : *data.train_embeddings;
}

void require_embeddings(const TrainData& data) {
  if (!data.train_embeddings) throw InputError("the autoencoder stages need training embeddings");
  if (data.dev && !data.dev_embeddings) throw InputError("a dev corpus for the autoencoder needs dev embeddings");
  check_alignment(*data.train_embeddings, *data.train);
  if (data.dev) check_alignment(*data.dev_embeddings, *data.dev);
}

void require_featurizer(const TrainData& data) {
  if (!data.featurizer) throw InputError("feature-based stages need a feature index");
}

}  // namespace

Stage parse_stage(std::string_view name) {
  if (name == "hmm") return Stage::kHmm;
  if (name == "fhmm") return Stage::kFhmm;
  if (name == "pretrain") return Stage::kPretrain;
  if (name == "crfae") return Stage::kCrfAe;
  throw InputError("unknown stage '" + std::string(name) + "' (expected hmm, fhmm, pretrain or crfae)");
}

std::string to_string(Stage stage) {
  switch (stage) {
    case Stage::kHmm: return "hmm";
    case Stage::kFhmm: return "fhmm";
    case Stage::kPretrain: return "pretrain";
    case Stage::kCrfAe: return "crfae";
  }
  return "?";
}

std::string model_kind(Stage stage) {
  switch (stage) {
    case Stage::kHmm: return "hmm";
    case Stage::kFhmm: return "fhmm";
    default: return "crfae";
  }
}

void TrainConfig::validate() const {
  auto positive = [](double x, const char* key) {
    if (!(x > 0.0)) throw InputError(std::string(key) + " must be positive");
  };
  if (tags < 1) throw InputError("tags must be at least 1");
  if (batch_words < 1) throw InputError("batch_words must be positive");
  if (max_epochs < 0) throw InputError("max_epochs must be non-negative");
  if (pretrain_epochs < 0 || pretrain_epochs > max_epochs) {
    throw InputError("pretrain_epochs must lie in [0, max_epochs]");
  }
  positive(lr_hmm, "lr_hmm");
  positive(lr_fhmm, "lr_fhmm");
  positive(lr_pretrain, "lr_pretrain");
  positive(lr_encoder, "lr_encoder");
  positive(lr_decoder, "lr_decoder");
  positive(lr_decay, "lr_decay");
  positive(lr_decay_epochs, "lr_decay_epochs");
  if (l2 < 0.0) throw InputError("l2 must be non-negative");
  if (adam.beta1 < 0.0 || adam.beta1 >= 1.0 || adam.beta2 < 0.0 || adam.beta2 >= 1.0) {
    throw InputError("adam betas must lie in [0, 1)");
  }
  if (encoder.dropout < 0.0 || encoder.dropout >= 1.0) throw InputError("dropout must lie in [0, 1)");
  if (encoder.bottleneck < 1) throw InputError("bottleneck must be positive");
  if (jobs < 1) throw InputError("jobs must be positive");
}

Fingerprint TrainConfig::fingerprint() const {
  std::string layers;
  for (auto k : encoder.layers) layers += (layers.empty() ? "" : ",") + std::to_string(k);
  return {
      {"tags", std::to_string(tags)},
      {"batch_words", std::to_string(batch_words)},
      {"max_epochs", std::to_string(max_epochs)},
      {"pretrain_epochs", std::to_string(pretrain_epochs)},
      {"beta1", num(adam.beta1)},
      {"beta2", num(adam.beta2)},
      {"adam_eps", num(adam.eps)},
      {"clip", num(adam.clip)},
      {"lr_hmm", num(lr_hmm)},
      {"lr_fhmm", num(lr_fhmm)},
      {"lr_pretrain", num(lr_pretrain)},
      {"lr_encoder", num(lr_encoder)},
      {"lr_decoder", num(lr_decoder)},
      {"lr_decay", num(lr_decay)},
      {"lr_decay_epochs", num(lr_decay_epochs)},
      {"l2", num(l2)},
      {"three_stage", three_stage ? "1" : "0"},
      {"seed", std::to_string(seed)},
      {"layers", layers.empty() ? "all" : layers},
      {"bottleneck", std::to_string(encoder.bottleneck)},
      {"dropout", num(encoder.dropout)},
      {"leaky_slope", num(encoder.leaky_slope)},
      {"ln_eps", num(encoder.layer_norm_eps)},
      {"minus", encoder.minus ? "1" : "0"},
  };
}

StageResult<HmmParams> train_hmm(const TrainData& data, const TrainConfig& config, std::vector<EpochRecord>& log) {
  const Corpus& train = *data.train;
  const Corpus& eval = ll_corpus(data);
  const auto eval_idx = all_indexes(eval);
  auto init = HmmParams::uniform_random(config.tags, train.vocab->size(), hash_combine(config.seed, kSaltHmm));
  auto lr = [&](ParamGroup) { return config.lr_hmm; };
  auto loss = [&](const HmmParams& p, const std::vector<std::size_t>& batch, HmmParams& grad, std::uint64_t) {
    hmm_neg_loglik(p, train, batch, &grad, {config.l2, config.jobs});
  };
  auto ll = [&](const HmmParams& p) {
    return eval_idx.empty() ? 0.0 : -hmm_neg_loglik(p, eval, eval_idx, nullptr, {0.0, config.jobs});
  };
  return run_stage("hmm", kSaltHmm, std::move(init), config.max_epochs, true, train, config, lr, loss, ll, log);
}

StageResult<FhmmParams> train_fhmm(const TrainData& data, const TrainConfig& config,
                                   std::vector<EpochRecord>& log) {
  require_featurizer(data);
  const Corpus& train = *data.train;
  const Corpus& eval = ll_corpus(data);
  const auto eval_idx = all_indexes(eval);
  const Featurizer& fz = *data.featurizer;
  auto init = FhmmParams::uniform_random(config.tags, fz.num_features(), hash_combine(config.seed, kSaltFhmm));
  auto lr = [&](ParamGroup) { return config.lr_fhmm; };
  auto loss = [&](const FhmmParams& p, const std::vector<std::size_t>& batch, FhmmParams& grad, std::uint64_t) {
    fhmm_neg_loglik(p, train, batch, fz, &grad, {config.l2, config.jobs});
  };
  auto ll = [&](const FhmmParams& p) {
    return eval_idx.empty() ? 0.0 : -fhmm_neg_loglik(p, eval, eval_idx, fz, nullptr, {0.0, config.jobs});
  };
  return run_stage("fhmm", kSaltFhmm, std::move(init), config.max_epochs, true, train, config, lr, loss, ll, log);
}

CrfAeParams initial_crfae_params(const TrainData& data, const TrainConfig& config) {
  require_featurizer(data);
  if (!data.train_embeddings) throw InputError("the autoencoder stages need training embeddings");
  const std::size_t mixed =
      config.encoder.layers.empty() ? data.train_embeddings->layers() : config.encoder.layers.size();
  return CrfAeParams::init(mixed, data.train_embeddings->dim(), config.encoder.bottleneck, config.tags,
                           data.featurizer->num_features(), hash_combine(config.seed, kSaltCrfAe));
}

StageResult<CrfAeParams> pretrain_encoder(const TrainData& data, const TrainConfig& config, CrfAeParams init,
                                          const std::vector<std::vector<TagId>>& labels,
                                          std::vector<EpochRecord>& log) {
  require_embeddings(data);
  const Corpus& train = *data.train;
  const auto train_idx = all_indexes(train);
  auto lr = [&](ParamGroup g) {
    return (g == ParamGroup::kEncoder || g == ParamGroup::kScalarMix) ? config.lr_pretrain : 0.0;
  };
  auto loss = [&](const CrfAeParams& p, const std::vector<std::size_t>& batch, CrfAeParams& grad,
                  std::uint64_t dropout_seed) {
    crf_supervised_nll(p, config.encoder, train, *data.train_embeddings, batch, labels, &grad,
                       {config.l2, config.jobs, true, dropout_seed});
  };
  auto ll = [&](const CrfAeParams& p) {
    if (train_idx.empty()) return 0.0;
    return -crf_supervised_nll(p, config.encoder, train, *data.train_embeddings, train_idx, labels, nullptr,
                               {0.0, config.jobs, false, 0});
  };
  return run_stage("pretrain", kSaltPretrain, std::move(init), config.pretrain_epochs, false, train, config, lr,
                   loss, ll, log);
}

StageResult<CrfAeParams> train_crfae(const TrainData& data, const TrainConfig& config, CrfAeParams init,
                                     std::vector<EpochRecord>& log) {
  require_embeddings(data);
  require_featurizer(data);
  const Corpus& train = *data.train;
  const Corpus& eval = ll_corpus(data);
  const EmbeddingSource& eval_emb = ll_embeddings(data);
  const Featurizer& fz = *data.featurizer;
  auto lr = [&](ParamGroup g) {
    if (g == ParamGroup::kEncoder) return config.lr_encoder;
    if (g == ParamGroup::kDecoder) return config.lr_decoder;
    return 0.0;
  };
  auto loss = [&](const CrfAeParams& p, const std::vector<std::size_t>& batch, CrfAeParams& grad,
                  std::uint64_t dropout_seed) {
    crfae_loss(p, config.encoder, train, *data.train_embeddings, batch, fz, &grad,
               {config.l2, config.jobs, true, dropout_seed});
  };
  auto ll = [&](const CrfAeParams& p) {
    return crfae_log_likelihood(p, config.encoder, eval, eval_emb, fz, config.jobs);
  };
  return run_stage("crfae", kSaltCrfAe, std::move(init), config.max_epochs, true, train, config, lr, loss, ll, log);
}

PipelineResult run_pipeline(const TrainData& data, const TrainConfig& config, Stage until) {
  config.validate();
  if (!data.train || data.train->size() == 0) throw InputError("training corpus is empty");
  PipelineResult result;
  result.stage = until;

  if (until == Stage::kHmm) {
    auto hmm = train_hmm(data, config, result.log);
    result.hmm = std::move(hmm.params);
    result.epoch = hmm.epoch;
    result.log_likelihood = hmm.log_likelihood;
    return result;
  }

  if (until == Stage::kFhmm || config.three_stage) {
    auto fhmm = train_fhmm(data, config, result.log);
    result.fhmm = std::move(fhmm.params);
    result.epoch = fhmm.epoch;
    result.log_likelihood = fhmm.log_likelihood;
    if (until == Stage::kFhmm) return result;
  }

  CrfAeParams params = initial_crfae_params(data, config);
  if (config.three_stage) {
    result.pseudo_labels = fhmm_decode(*result.fhmm, *data.train, *data.featurizer, config.jobs);
    params.theta = result.fhmm->theta;
    auto pre = pretrain_encoder(data, config, std::move(params), result.pseudo_labels, result.log);
    params = std::move(pre.params);
    result.epoch = pre.epoch;
    result.log_likelihood = pre.log_likelihood;
  }
  if (until == Stage::kPretrain) {
    result.log_likelihood = crfae_log_likelihood(params, config.encoder, ll_corpus(data), ll_embeddings(data),
                                                 *data.featurizer, config.jobs);
    result.crfae = std::move(params);
    return result;
  }

  auto full = train_crfae(data, config, std::move(params), result.log);
  result.crfae = std::move(full.params);
  result.epoch = full.epoch;
  result.log_likelihood = full.log_likelihood;
  return result;
}

Checkpoint make_checkpoint(const PipelineResult& result, const TrainConfig& config,
                           const Fingerprint& feature_fingerprint) {
  Checkpoint ckpt;
  ckpt.fingerprint = config.fingerprint();
  for (const auto& [k, v] : feature_fingerprint) ckpt.fingerprint[k] = v;
  const std::string kind = model_kind(result.stage);
  ckpt.fingerprint["model"] = kind;
  ckpt.fingerprint["stage"] = to_string(result.stage);
  // Which quantity the recorded LL is.
  ckpt.fingerprint["ll"] = kind == "crfae" ? "reconstruction_marginal" : "marginal";
  ckpt.epoch = result.epoch;
  ckpt.log_likelihood = result.log_likelihood;
  if (kind == "hmm") ckpt.store(*result.hmm);
  if (kind == "fhmm") ckpt.store(*result.fhmm);
  if (kind == "crfae") ckpt.store(*result.crfae);
  return ckpt;
}

std::string format_epoch_log(const std::vector<EpochRecord>& log) {
  std::ostringstream out;
  out << "stage\tepoch\tll\n";
  char buf[40];
  for (const auto& r : log) {
    std::snprintf(buf, sizeof buf, "%.10g", r.log_likelihood);
    out << r.stage << '\t' << r.epoch << '\t' << buf << '\n';
  }
  return out.str();
}

}  // namespace crfae
