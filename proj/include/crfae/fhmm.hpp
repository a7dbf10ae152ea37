#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "crfae/features.hpp"
#include "crfae/hmm.hpp"

namespace crfae {

/// log p(x | y) for every training word type, from feature weights theta:
/// log p(x|y) = theta_y . f(x) - log sum_{x' in V} exp(theta_y . f(x')).
struct EmissionTable {
  Matrix log_probs;        // |Y| x |V|
  Vector log_normalizers;  // |Y|
};

/// Normalizers are computed per tag in parallel when jobs > 1.
EmissionTable fhmm_emission_table(const Matrix& theta, const FeatureMatrix& features, int jobs = 1);

/// Serial scalar-loop version kept as a reference for the parallel kernel.
EmissionTable fhmm_emission_table_reference(const Matrix& theta, const FeatureMatrix& features);

/// Given dL/dlog p(x|y) over the vocabulary, returns dL/dtheta. Optional
/// direct gradients on the per-tag log-normalizers (from out-of-vocabulary
/// tokens scored against them) are folded in as well.
Matrix emission_backward(const EmissionTable& table, const Matrix& grad_log_probs,
                         const FeatureMatrix& features, int jobs = 1,
                         const Vector* grad_log_normalizers = nullptr);

/// n x |Y| log-emission rows for one sentence. Out-of-vocabulary tokens are
/// scored from their own features against the training normalizers.
Matrix sentence_log_emissions(const EmissionTable& table, const Matrix& theta,
                              const Featurizer& featurizer, const Sentence& sentence);

struct FhmmParams {
  Matrix init;   // 1 x |Y|
  Matrix trans;  // |Y| x |Y|
  Matrix theta;  // |Y| x |F|

  static FhmmParams uniform_random(std::size_t tags, std::size_t features, std::uint64_t seed,
                                   double scale = 0.1);
  static FhmmParams zeros(std::size_t tags, std::size_t features);
  std::size_t num_tags() const { return static_cast<std::size_t>(trans.rows()); }

  std::vector<TensorRef> tensors();
  std::vector<ConstTensorRef> tensors() const;
};

SequenceLattice fhmm_lattice(const FhmmParams& params, const EmissionTable& table,
                             const Featurizer& featurizer, const Sentence& sentence);

double fhmm_neg_loglik(const FhmmParams& params, const Corpus& corpus,
                       std::span<const std::size_t> batch, const Featurizer& featurizer,
                       FhmmParams* grad, const LossOptions& options = {});

std::vector<std::vector<TagId>> fhmm_decode(const FhmmParams& params, const Corpus& corpus,
                                            const Featurizer& featurizer, int jobs = 1);

}  // namespace crfae
