#include "crfae/fhmm.hpp"

#include <cmath>
#include <limits>

#include "crfae/error.hpp"
#include "crfae/init.hpp"
#include "crfae/parallel.hpp"

namespace crfae {
namespace {

double dot(const Matrix& theta, Eigen::Index tag, std::span<const FeatureId> ids) {
  double s = 0.0;
  for (FeatureId f : ids) s += theta(tag, f);
  return s;
}

void check_theta(const Matrix& theta, const FeatureMatrix& features) {
  if (static_cast<std::size_t>(theta.cols()) != features.cols()) {
    throw MismatchError("theta has " + std::to_string(theta.cols()) + " columns but the feature index has " +
                        std::to_string(features.cols()) + " features");
  }
}

/// Fills row `tag` of the table.
void emission_row(const Matrix& theta, const FeatureMatrix& features, Eigen::Index tag,
                  EmissionTable& table) {
  const auto v = static_cast<Eigen::Index>(features.rows());
  double m = -std::numeric_limits<double>::infinity();
  for (Eigen::Index x = 0; x < v; ++x) {
    double s = dot(theta, tag, features.row(static_cast<std::size_t>(x)));
    table.log_probs(tag, x) = s;
    m = std::max(m, s);
  }
  double total = 0.0;
  for (Eigen::Index x = 0; x < v; ++x) total += std::exp(table.log_probs(tag, x) - m);
  double log_norm = m + std::log(total);
  table.log_normalizers(tag) = log_norm;
  for (Eigen::Index x = 0; x < v; ++x) table.log_probs(tag, x) -= log_norm;
}

}  // namespace

EmissionTable fhmm_emission_table(const Matrix& theta, const FeatureMatrix& features, int jobs) {
  check_theta(theta, features);
  EmissionTable table;
  table.log_probs.resize(theta.rows(), static_cast<Eigen::Index>(features.rows()));
  table.log_normalizers.resize(theta.rows());
  parallel_for(static_cast<std::size_t>(theta.rows()), jobs, [&](std::size_t y) {
    emission_row(theta, features, static_cast<Eigen::Index>(y), table);
  });
  return table;
}

EmissionTable fhmm_emission_table_reference(const Matrix& theta, const FeatureMatrix& features) {
  check_theta(theta, features);
  EmissionTable table;
  table.log_probs.resize(theta.rows(), static_cast<Eigen::Index>(features.rows()));
  table.log_normalizers.resize(theta.rows());
  for (Eigen::Index y = 0; y < theta.rows(); ++y) emission_row(theta, features, y, table);
  return table;
}

Matrix emission_backward(const EmissionTable& table, const Matrix& grad_log_probs,
                         const FeatureMatrix& features, int jobs, const Vector* grad_log_normalizers) {
  const Eigen::Index k = table.log_probs.rows();
  const auto v = static_cast<Eigen::Index>(features.rows());
  Matrix grad_theta = Matrix::Zero(k, static_cast<Eigen::Index>(features.cols()));
  parallel_for(static_cast<std::size_t>(k), jobs, [&](std::size_t yy) {
    const auto y = static_cast<Eigen::Index>(yy);
    double total = grad_log_probs.row(y).sum();
    if (grad_log_normalizers) total -= (*grad_log_normalizers)(y);
    for (Eigen::Index x = 0; x < v; ++x) {
      double g = grad_log_probs(y, x) - std::exp(table.log_probs(y, x)) * total;
      if (g == 0.0) continue;
      for (FeatureId f : features.row(static_cast<std::size_t>(x))) grad_theta(y, f) += g;
    }
  });
  return grad_theta;
}

Matrix sentence_log_emissions(const EmissionTable& table, const Matrix& theta,
                              const Featurizer& featurizer, const Sentence& sentence) {
  const Eigen::Index k = table.log_probs.rows();
  Matrix out(static_cast<Eigen::Index>(sentence.size()), k);
  for (std::size_t i = 0; i < sentence.size(); ++i) {
    const auto row = static_cast<Eigen::Index>(i);
    WordId x = sentence.word_ids[i];
    if (x >= 0 && x < table.log_probs.cols()) {
      out.row(row) = table.log_probs.col(x).transpose();
    } else {
      auto fv = featurizer.token(sentence, i);
      for (Eigen::Index y = 0; y < k; ++y) out(row, y) = dot(theta, y, fv.ids) - table.log_normalizers(y);
    }
  }
  return out;
}

FhmmParams FhmmParams::uniform_random(std::size_t tags, std::size_t features, std::uint64_t seed,
                                      double scale) {
  UniformInit init(seed, scale);
  FhmmParams p;
  p.init = init.matrix(1, tags);
  p.trans = init.matrix(tags, tags);
  p.theta = init.matrix(tags, features);
  return p;
}

FhmmParams FhmmParams::zeros(std::size_t tags, std::size_t features) {
  FhmmParams p;
  const auto k = static_cast<Eigen::Index>(tags);
  p.init = Matrix::Zero(1, k);
  p.trans = Matrix::Zero(k, k);
  p.theta = Matrix::Zero(k, static_cast<Eigen::Index>(features));
  return p;
}

std::vector<TensorRef> FhmmParams::tensors() {
  return {{"fhmm.init", &init, ParamGroup::kHmm, true},
          {"fhmm.trans", &trans, ParamGroup::kHmm, true},
          {"fhmm.theta", &theta, ParamGroup::kHmm, true}};
}

std::vector<ConstTensorRef> FhmmParams::tensors() const {
  return {{"fhmm.init", &init, ParamGroup::kHmm, true},
          {"fhmm.trans", &trans, ParamGroup::kHmm, true},
          {"fhmm.theta", &theta, ParamGroup::kHmm, true}};
}

SequenceLattice fhmm_lattice(const FhmmParams& params, const EmissionTable& table,
                             const Featurizer& featurizer, const Sentence& sentence) {
  SequenceLattice lat;
  lat.unary = sentence_log_emissions(table, params.theta, featurizer, sentence);
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

double fhmm_neg_loglik(const FhmmParams& params, const Corpus& corpus,
                       std::span<const std::size_t> batch, const Featurizer& featurizer,
                       FhmmParams* grad, const LossOptions& options) {
  if (batch.empty()) throw std::invalid_argument("empty batch");
  const auto& features = featurizer.vocab_features();
  const EmissionTable table = fhmm_emission_table(params.theta, features, options.jobs);
  const Matrix log_trans = log_softmax_rows(params.trans);
  const Matrix log_init = log_softmax_rows(params.init);

  std::vector<SentenceStats> stats(batch.size());
  parallel_for(batch.size(), options.jobs, [&](std::size_t b) {
    auto lat = fhmm_lattice(params, table, featurizer, corpus.sentences[batch[b]]);
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
  Matrix grad_log_emit = Matrix::Zero(k, table.log_probs.cols());
  Matrix oov_theta_grad = Matrix::Zero(k, params.theta.cols());
  Vector grad_log_norm = Vector::Zero(k);
  for (std::size_t b = 0; b < batch.size(); ++b) {
    const auto& s = corpus.sentences[batch[b]];
    const auto& st = stats[b];
    init_counts += st.posteriors.row(0);
    trans_counts += st.transitions;
    for (std::size_t i = 0; i < s.size(); ++i) {
      const auto row = static_cast<Eigen::Index>(i);
      WordId x = s.word_ids[i];
      if (x >= 0 && x < grad_log_emit.cols()) {
        grad_log_emit.col(x) -= st.posteriors.row(row).transpose();
      } else {
        // OOV score theta.f(x) - log Z_y: the f(x) part here, the normalizer below.
        auto fv = featurizer.token(s, i);
        for (Eigen::Index y = 0; y < k; ++y) {
          for (FeatureId f : fv.ids) oov_theta_grad(y, f) -= st.posteriors(row, y);
          grad_log_norm(y) += st.posteriors(row, y);
        }
      }
    }
  }
  grad->init = log_softmax_count_backward(log_init, init_counts);
  grad->trans = log_softmax_count_backward(log_trans, trans_counts);
  grad->theta = emission_backward(table, grad_log_emit, features, options.jobs, &grad_log_norm) +
                oov_theta_grad;
  loss += add_l2(params, *grad, options.l2);
  return loss;
}

std::vector<std::vector<TagId>> fhmm_decode(const FhmmParams& params, const Corpus& corpus,
                                            const Featurizer& featurizer, int jobs) {
  const EmissionTable table = fhmm_emission_table(params.theta, featurizer.vocab_features(), jobs);
  std::vector<std::vector<TagId>> out(corpus.size());
  parallel_for(corpus.size(), jobs, [&](std::size_t s) {
    out[s] = viterbi(fhmm_lattice(params, table, featurizer, corpus.sentences[s])).tags;
  });
  return out;
}

}  // namespace crfae
