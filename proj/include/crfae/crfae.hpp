#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "crfae/embeddings.hpp"
#include "crfae/encoder.hpp"
#include "crfae/features.hpp"
#include "crfae/fhmm.hpp"
#include "crfae/lattice.hpp"

namespace crfae {

struct CrfAeOptions {
  double l2 = 0.0;
  int jobs = 1;
  bool train = false;  // enables dropout
  std::uint64_t dropout_seed = 0;
};

/// Dropout seed for sentence `index` in a pass seeded with `seed`.
std::uint64_t sentence_dropout_seed(std::uint64_t seed, std::size_t index);

/// Encoder-only lattice (S) and joint lattice (S + log p(x|y)) for one sentence.
struct CrfAeLattices {
  SequenceLattice encoder;
  SequenceLattice joint;
};

CrfAeLattices crfae_lattices(const CrfAeParams& params, const EncoderConfig& config,
                             const SentenceEmbedding& embedding, const EmissionTable& table,
                             const Featurizer& featurizer, const Sentence& sentence,
                             bool train = false, std::uint64_t dropout_seed = 0,
                             EncoderCache* cache = nullptr);

/// sum over the batch of log Z(S) - log Z(S + E), plus l2 * ||params||^2.
/// This is -sum log sum_y p(y|x) p(x|y).
double crfae_loss(const CrfAeParams& params, const EncoderConfig& config, const Corpus& corpus,
                  const EmbeddingSource& embeddings, std::span<const std::size_t> batch,
                  const Featurizer& featurizer, CrfAeParams* grad, const CrfAeOptions& options = {});

/// Negative conditional log-likelihood of `labels` under the encoder CRF, plus
/// l2 * ||params||^2. `labels` is indexed by sentence.
double crf_supervised_nll(const CrfAeParams& params, const EncoderConfig& config, const Corpus& corpus,
                          const EmbeddingSource& embeddings, std::span<const std::size_t> batch,
                          const std::vector<std::vector<TagId>>& labels, CrfAeParams* grad,
                          const CrfAeOptions& options = {});

/// argmax_y p(y|x) p(x|y), no dropout.
std::vector<std::vector<TagId>> joint_decode(const CrfAeParams& params, const EncoderConfig& config,
                                             const Corpus& corpus, const EmbeddingSource& embeddings,
                                             const Featurizer& featurizer, int jobs = 1);

/// argmax_y p(y|x), no dropout.
std::vector<std::vector<TagId>> encoder_decode(const CrfAeParams& params, const EncoderConfig& config,
                                               const Corpus& corpus, const EmbeddingSource& embeddings,
                                               int jobs = 1);

/// sum log sum_y p(y|x) p(x|y) over the corpus, no dropout and no L2.
double crfae_log_likelihood(const CrfAeParams& params, const EncoderConfig& config, const Corpus& corpus,
                            const EmbeddingSource& embeddings, const Featurizer& featurizer, int jobs = 1);

}  // namespace crfae
