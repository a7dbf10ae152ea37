#include "crfae/hmm.hpp"

#include <cmath>

#include "crfae/error.hpp"
#include "crfae/init.hpp"
#include "crfae/parallel.hpp"

namespace crfae {

Matrix log_softmax_rows(const Matrix& logits) {
  Matrix out(logits.rows(), logits.cols());
  for (Eigen::Index r = 0; r < logits.rows(); ++r) {
    double m = logits.row(r).maxCoeff();
    double lse = m + std::log((logits.row(r).array() - m).exp().sum());
    out.row(r) = logits.row(r).array() - lse;
  }
  return out;
}

Matrix log_softmax_count_backward(const Matrix& log_probs, const Matrix& counts) {
  Matrix probs = log_probs.array().exp().matrix();
  Eigen::VectorXd totals = counts.rowwise().sum();
  return (probs.array().colwise() * totals.array()).matrix() - counts;
}

HmmParams HmmParams::uniform_random(std::size_t tags, std::size_t vocab, std::uint64_t seed, double scale) {
  UniformInit init(seed, scale);
  HmmParams p;
  p.init = init.matrix(1, tags);
  p.trans = init.matrix(tags, tags);
  p.emit = init.matrix(tags, vocab);
  return p;
}

HmmParams HmmParams::zeros(std::size_t tags, std::size_t vocab) {
  HmmParams p;
  p.init = Matrix::Zero(1, static_cast<Eigen::Index>(tags));
  p.trans = Matrix::Zero(static_cast<Eigen::Index>(tags), static_cast<Eigen::Index>(tags));
  p.emit = Matrix::Zero(static_cast<Eigen::Index>(tags), static_cast<Eigen::Index>(vocab));
  return p;
}

std::vector<TensorRef> HmmParams::tensors() {
  return {{"hmm.init", &init, ParamGroup::kHmm, true},
          {"hmm.trans", &trans, ParamGroup::kHmm, true},
          {"hmm.emit", &emit, ParamGroup::kHmm, true}};
}

std::vector<ConstTensorRef> HmmParams::tensors() const {
  return {{"hmm.init", &init, ParamGroup::kHmm, true},
          {"hmm.trans", &trans, ParamGroup::kHmm, true},
          {"hmm.emit", &emit, ParamGroup::kHmm, true}};
}

SequenceLattice hmm_lattice(const HmmParams& params, const Matrix& log_emit, const Sentence& sentence) {
  const auto k = static_cast<Eigen::Index>(params.num_tags());
  SequenceLattice lat;
  lat.unary = Matrix::Zero(static_cast<Eigen::Index>(sentence.size()), k);
  for (std::size_t i = 0; i < sentence.size(); ++i) {
    WordId x = sentence.word_ids[i];
    if (x >= 0 && x < log_emit.cols()) lat.unary.row(static_cast<Eigen::Index>(i)) = log_emit.col(x).transpose();
  }
  lat.trans = log_softmax_rows(params.trans);
  lat.start = log_softmax_rows(params.init).row(0).transpose();
  return lat;
}

namespace {

struct SentenceStats {
  double log_z = 0.0;
  Matrix posteriors;
  Matrix transitions;
};

}  // namespace

double hmm_neg_loglik(const HmmParams& params, const Corpus& corpus,
                      std::span<const std::size_t> batch, HmmParams* grad, const LossOptions& options) {
  if (batch.empty()) throw std::invalid_argument("empty batch");
  const Matrix log_emit = log_softmax_rows(params.emit);
  const Matrix log_trans = log_softmax_rows(params.trans);
  const Matrix log_init = log_softmax_rows(params.init);

  std::vector<SentenceStats> stats(batch.size());
  parallel_for(batch.size(), options.jobs, [&](std::size_t b) {
    const auto& s = corpus.sentences[batch[b]];
    auto lat = hmm_lattice(params, log_emit, s);
    if (grad) {
      auto m = posterior_marginals(lat);
      Matrix transitions = m.transition_counts();
      stats[b] = {m.log_z, std::move(m.unary), std::move(transitions)};
    } else {
      stats[b].log_z = log_partition(lat);
    }
  });

  double loss = 0.0;
  for (const auto& st : stats) loss -= st.log_z;
  if (!grad) return loss + options.l2 * l2_norm_sq(params);

  const auto k = params.init.cols();
  Matrix init_counts = Matrix::Zero(1, k);
  Matrix trans_counts = Matrix::Zero(k, k);
  Matrix emit_counts = Matrix::Zero(k, params.emit.cols());
  for (std::size_t b = 0; b < batch.size(); ++b) {
    const auto& s = corpus.sentences[batch[b]];
    const auto& st = stats[b];
    init_counts += st.posteriors.row(0);
    trans_counts += st.transitions;
    for (std::size_t i = 0; i < s.size(); ++i) {
      WordId x = s.word_ids[i];
      if (x >= 0 && x < emit_counts.cols()) emit_counts.col(x) += st.posteriors.row(static_cast<Eigen::Index>(i)).transpose();
    }
  }
  grad->init = log_softmax_count_backward(log_init, init_counts);
  grad->trans = log_softmax_count_backward(log_trans, trans_counts);
  grad->emit = log_softmax_count_backward(log_emit, emit_counts);
  loss += add_l2(params, *grad, options.l2);
  return loss;
}

std::vector<std::vector<TagId>> hmm_decode(const HmmParams& params, const Corpus& corpus, int jobs) {
  const Matrix log_emit = log_softmax_rows(params.emit);
  std::vector<std::vector<TagId>> out(corpus.size());
  parallel_for(corpus.size(), jobs, [&](std::size_t s) {
    out[s] = viterbi(hmm_lattice(params, log_emit, corpus.sentences[s])).tags;
  });
  return out;
}

}  // namespace crfae
