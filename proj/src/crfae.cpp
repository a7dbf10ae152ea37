#include "crfae/crfae.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

#include "crfae/error.hpp"
#include "crfae/hash.hpp"
#include "crfae/parallel.hpp"

namespace crfae {
namespace {

SequenceLattice encoder_lattice(const CrfAeParams& params, Matrix unary) {
  SequenceLattice lat;
  lat.unary = std::move(unary);
  lat.trans = params.trans;
  lat.start = params.start.row(0).transpose();
  return lat;
}

SentenceEmbedding fetch(const EmbeddingSource& embeddings, const Corpus& corpus, std::size_t s) {
  if (s >= embeddings.size()) {
    throw MismatchError("no embedding for sentence " + std::to_string(s));
  }
  SentenceEmbedding e = embeddings.get(s);
  if (e.tokens != corpus.sentences[s].size()) {
    throw MismatchError("sentence " + std::to_string(s) + " has " + std::to_string(corpus.sentences[s].size()) +
                        " tokens but its embedding has " + std::to_string(e.tokens));
  }
  return e;
}

struct SentenceGrad {
  double loss = 0.0;
  CrfAeParams grad;
  Matrix joint_posteriors;  // for the decoder gradient
};

/// Zero gradient for every tensor except the decoder weights, which stay empty.
CrfAeParams encoder_zero_grad(const CrfAeParams& params) {
  CrfAeParams g;
  auto src = params.tensors();
  auto dst = g.tensors();
  for (std::size_t t = 0; t < src.size(); ++t) {
    if (src[t].group != ParamGroup::kDecoder) *dst[t].value = Matrix::Zero(src[t].value->rows(), src[t].value->cols());
  }
  return g;
}

/// dst += src, skipping tensors left empty in the per-sentence gradient.
void accumulate(CrfAeParams& dst, const CrfAeParams& src) {
  auto d = dst.tensors();
  auto s = src.tensors();
  for (std::size_t t = 0; t < d.size(); ++t) {
    if (s[t].value->size() > 0) *d[t].value += *s[t].value;
  }
}

std::vector<std::size_t> all_sentences(const Corpus& corpus) {
  std::vector<std::size_t> idx(corpus.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  return idx;
}

}  // namespace

std::uint64_t sentence_dropout_seed(std::uint64_t seed, std::size_t index) {
  return hash_combine(seed, static_cast<std::uint64_t>(index));
}

CrfAeLattices crfae_lattices(const CrfAeParams& params, const EncoderConfig& config,
                             const SentenceEmbedding& embedding, const EmissionTable& table,
                             const Featurizer& featurizer, const Sentence& sentence, bool train,
                             std::uint64_t dropout_seed, EncoderCache* cache) {
  CrfAeLattices out;
  out.encoder = encoder_lattice(params, encoder_unary_scores(params, config, embedding, train, dropout_seed, cache));
  out.joint = out.encoder;
  out.joint.unary += sentence_log_emissions(table, params.theta, featurizer, sentence);
  return out;
}

double crfae_loss(const CrfAeParams& params, const EncoderConfig& config, const Corpus& corpus,
                  const EmbeddingSource& embeddings, std::span<const std::size_t> batch,
                  const Featurizer& featurizer, CrfAeParams* grad, const CrfAeOptions& options) {
  if (batch.empty()) throw std::invalid_argument("empty batch");
  const auto& features = featurizer.vocab_features();
  const EmissionTable table = fhmm_emission_table(params.theta, features, options.jobs);

  std::vector<SentenceGrad> slots(batch.size());
  parallel_for(batch.size(), options.jobs, [&](std::size_t b) {
    const std::size_t s = batch[b];
    const auto emb = fetch(embeddings, corpus, s);
    EncoderCache cache;
    auto lat = crfae_lattices(params, config, emb, table, featurizer, corpus.sentences[s], options.train,
                              sentence_dropout_seed(options.dropout_seed, s), grad ? &cache : nullptr);
    auto& slot = slots[b];
    if (!grad) {
      slot.loss = log_partition(lat.encoder) - log_partition(lat.joint);
      return;
    }
    auto m1 = posterior_marginals(lat.encoder);
    auto m2 = posterior_marginals(lat.joint);
    slot.loss = m1.log_z - m2.log_z;
    slot.grad = encoder_zero_grad(params);
    slot.grad.trans = m1.transition_counts() - m2.transition_counts();
    slot.grad.start = m1.unary.row(0) - m2.unary.row(0);
    encoder_backward(params, config, cache, m1.unary - m2.unary, slot.grad);
    slot.joint_posteriors = std::move(m2.unary);
  });

  double loss = 0.0;
  for (const auto& slot : slots) loss += slot.loss;
  if (!grad) return loss + options.l2 * l2_norm_sq(params);

  *grad = zeros_like(params);
  const Eigen::Index k = params.trans.rows();
  Matrix grad_log_emit = Matrix::Zero(k, table.log_probs.cols());
  Matrix oov_theta_grad = Matrix::Zero(k, params.theta.cols());
  Vector grad_log_norm = Vector::Zero(k);
  for (std::size_t b = 0; b < batch.size(); ++b) {
    auto& slot = slots[b];
    accumulate(*grad, slot.grad);

    // dL/dE = -joint posteriors.
    const auto& s = corpus.sentences[batch[b]];
    for (std::size_t i = 0; i < s.size(); ++i) {
      const auto row = static_cast<Eigen::Index>(i);
      WordId x = s.word_ids[i];
      if (x >= 0 && x < grad_log_emit.cols()) {
        grad_log_emit.col(x) -= slot.joint_posteriors.row(row).transpose();
      } else {
        auto fv = featurizer.token(s, i);
        for (Eigen::Index y = 0; y < k; ++y) {
          for (FeatureId f : fv.ids) oov_theta_grad(y, f) -= slot.joint_posteriors(row, y);
          grad_log_norm(y) += slot.joint_posteriors(row, y);
        }
      }
    }
  }
  grad->theta = emission_backward(table, grad_log_emit, features, options.jobs, &grad_log_norm) + oov_theta_grad;
  loss += add_l2(params, *grad, options.l2);
  return loss;
}

double crf_supervised_nll(const CrfAeParams& params, const EncoderConfig& config, const Corpus& corpus,
                          const EmbeddingSource& embeddings, std::span<const std::size_t> batch,
                          const std::vector<std::vector<TagId>>& labels, CrfAeParams* grad,
                          const CrfAeOptions& options) {
  if (batch.empty()) throw std::invalid_argument("empty batch");
  std::vector<SentenceGrad> slots(batch.size());
  parallel_for(batch.size(), options.jobs, [&](std::size_t b) {
    const std::size_t s = batch[b];
    const auto& y = labels.at(s);
    if (y.size() != corpus.sentences[s].size()) {
      throw MismatchError("label sequence length differs from sentence " + std::to_string(s));
    }
    const auto emb = fetch(embeddings, corpus, s);
    EncoderCache cache;
    auto lat = encoder_lattice(params, encoder_unary_scores(params, config, emb, options.train,
                                                            sentence_dropout_seed(options.dropout_seed, s),
                                                            grad ? &cache : nullptr));
    auto& slot = slots[b];
    const double gold = sequence_score(lat, y);
    if (!grad) {
      slot.loss = log_partition(lat) - gold;
      return;
    }
    auto m = posterior_marginals(lat);
    slot.loss = m.log_z - gold;
    slot.grad = encoder_zero_grad(params);
    Matrix d_unary = m.unary;
    Matrix d_trans = m.transition_counts();
    for (std::size_t i = 0; i < y.size(); ++i) {
      d_unary(static_cast<Eigen::Index>(i), y[i]) -= 1.0;
      if (i > 0) d_trans(y[i - 1], y[i]) -= 1.0;
    }
    slot.grad.trans = d_trans;
    slot.grad.start = m.unary.row(0);
    slot.grad.start(0, y[0]) -= 1.0;
    encoder_backward(params, config, cache, d_unary, slot.grad);
  });

  double loss = 0.0;
  for (const auto& slot : slots) loss += slot.loss;
  if (!grad) return loss + options.l2 * l2_norm_sq(params);

  *grad = zeros_like(params);
  for (const auto& slot : slots) accumulate(*grad, slot.grad);
  loss += add_l2(params, *grad, options.l2);
  return loss;
}

std::vector<std::vector<TagId>> joint_decode(const CrfAeParams& params, const EncoderConfig& config,
                                             const Corpus& corpus, const EmbeddingSource& embeddings,
                                             const Featurizer& featurizer, int jobs) {
  const EmissionTable table = fhmm_emission_table(params.theta, featurizer.vocab_features(), jobs);
  std::vector<std::vector<TagId>> out(corpus.size());
  parallel_for(corpus.size(), jobs, [&](std::size_t s) {
    const auto emb = fetch(embeddings, corpus, s);
    out[s] = viterbi(crfae_lattices(params, config, emb, table, featurizer, corpus.sentences[s]).joint).tags;
  });
  return out;
}

std::vector<std::vector<TagId>> encoder_decode(const CrfAeParams& params, const EncoderConfig& config,
                                               const Corpus& corpus, const EmbeddingSource& embeddings,
                                               int jobs) {
  std::vector<std::vector<TagId>> out(corpus.size());
  parallel_for(corpus.size(), jobs, [&](std::size_t s) {
    const auto emb = fetch(embeddings, corpus, s);
    out[s] = viterbi(encoder_lattice(params, encoder_unary_scores(params, config, emb, false, 0))).tags;
  });
  return out;
}

double crfae_log_likelihood(const CrfAeParams& params, const EncoderConfig& config, const Corpus& corpus,
                            const EmbeddingSource& embeddings, const Featurizer& featurizer, int jobs) {
  if (corpus.size() == 0) return 0.0;
  auto idx = all_sentences(corpus);
  CrfAeOptions options;
  options.jobs = jobs;
  return -crfae_loss(params, config, corpus, embeddings, idx, featurizer, nullptr, options);
}

}  // namespace crfae
