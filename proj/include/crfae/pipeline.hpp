#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "crfae/checkpoint.hpp"
#include "crfae/crfae.hpp"
#include "crfae/hmm.hpp"
#include "crfae/optimizer.hpp"

namespace crfae {

enum class Stage { kHmm, kFhmm, kPretrain, kCrfAe };

Stage parse_stage(std::string_view name);
std::string to_string(Stage stage);

struct TrainConfig {
  std::size_t tags = 45;
  std::size_t batch_words = 5000;
  int max_epochs = 50;
  int pretrain_epochs = 5;
  AdamConfig adam;
  double lr_hmm = 0.5;
  double lr_fhmm = 0.5;
  double lr_pretrain = 2e-3;
  double lr_encoder = 1e-2;
  double lr_decoder = 2e-1;
  double lr_decay = 0.75;
  double lr_decay_epochs = 45.0;
  double l2 = 1e-5;
  /// false: skip stages 1-2 and start the autoencoder from theta = 0.
  bool three_stage = true;
  std::uint64_t seed = 0;
  int jobs = 1;
  EncoderConfig encoder;

  /// Throws InputError on out-of-range values.
  void validate() const;
  Fingerprint fingerprint() const;
};

struct TrainData {
  const Corpus* train = nullptr;
  const EmbeddingSource* train_embeddings = nullptr;
  const Corpus* dev = nullptr;
  const EmbeddingSource* dev_embeddings = nullptr;
  const Featurizer* featurizer = nullptr;
};

struct EpochRecord {
  std::string stage;
  int epoch = 0;
  double log_likelihood = 0.0;
};

/// Parameters plus the epoch chosen for them.
template <class P>
struct StageResult {
  P params;
  int epoch = 0;
  double log_likelihood = 0.0;
};

StageResult<HmmParams> train_hmm(const TrainData& data, const TrainConfig& config, std::vector<EpochRecord>& log);
StageResult<FhmmParams> train_fhmm(const TrainData& data, const TrainConfig& config,
                                   std::vector<EpochRecord>& log);
/// Stage 2: fits the encoder CRF to `labels` for exactly pretrain_epochs.
StageResult<CrfAeParams> pretrain_encoder(const TrainData& data, const TrainConfig& config, CrfAeParams init,
                                          const std::vector<std::vector<TagId>>& labels,
                                          std::vector<EpochRecord>& log);
/// Stage 3: autoencoder training with best-epoch selection.
StageResult<CrfAeParams> train_crfae(const TrainData& data, const TrainConfig& config, CrfAeParams init,
                                     std::vector<EpochRecord>& log);

/// Freshly initialized autoencoder parameters sized for the data.
CrfAeParams initial_crfae_params(const TrainData& data, const TrainConfig& config);

struct PipelineResult {
  Stage stage = Stage::kCrfAe;
  std::optional<HmmParams> hmm;
  std::optional<FhmmParams> fhmm;
  std::optional<CrfAeParams> crfae;
  std::vector<std::vector<TagId>> pseudo_labels;
  int epoch = 0;
  double log_likelihood = 0.0;
  std::vector<EpochRecord> log;
};

/// Stage 1 (FHMM), stage 2 (encoder pre-training on FHMM Viterbi labels with
/// theta copied into the decoder), stage 3 (autoencoder). `until` stops after
/// the named stage; kHmm trains only the word-level HMM baseline.
PipelineResult run_pipeline(const TrainData& data, const TrainConfig& config, Stage until = Stage::kCrfAe);

/// Model kind recorded in checkpoints: "hmm", "fhmm" or "crfae".
std::string model_kind(Stage stage);

/// Checkpoint of the final model, fingerprinted with the training and
/// feature configuration.
Checkpoint make_checkpoint(const PipelineResult& result, const TrainConfig& config,
                           const Fingerprint& feature_fingerprint);

/// Tab-separated `stage epoch ll` lines.
std::string format_epoch_log(const std::vector<EpochRecord>& log);

}  // namespace crfae
