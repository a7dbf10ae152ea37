#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "crfae/corpus.hpp"
#include "crfae/lattice.hpp"
#include "crfae/params.hpp"

namespace crfae {

/// Row-wise log-softmax.
Matrix log_softmax_rows(const Matrix& logits);

/// Backpropagates through a row-wise log-softmax given expected counts:
/// for L = -sum counts .* log_softmax(logits), returns dL/dlogits.
Matrix log_softmax_count_backward(const Matrix& log_probs, const Matrix& counts);

/// Word-level HMM with softmax-parameterized tables.
struct HmmParams {
  Matrix init;   // 1 x |Y|
  Matrix trans;  // |Y| x |Y|
  Matrix emit;   // |Y| x |V|

  static HmmParams uniform_random(std::size_t tags, std::size_t vocab, std::uint64_t seed,
                                  double scale = 0.1);
  static HmmParams zeros(std::size_t tags, std::size_t vocab);
  std::size_t num_tags() const { return static_cast<std::size_t>(trans.rows()); }

  std::vector<TensorRef> tensors();
  std::vector<ConstTensorRef> tensors() const;
};

struct LossOptions {
  double l2 = 0.0;
  int jobs = 1;
};

/// Lattice for one sentence; out-of-vocabulary tokens get a flat emission row.
SequenceLattice hmm_lattice(const HmmParams& params, const Matrix& log_emit, const Sentence& sentence);

/// -sum log p(x) over the selected sentences (+ l2 * ||params||^2). Gradients
/// are written to `grad` when it is non-null.
double hmm_neg_loglik(const HmmParams& params, const Corpus& corpus,
                      std::span<const std::size_t> batch, HmmParams* grad,
                      const LossOptions& options = {});

std::vector<std::vector<TagId>> hmm_decode(const HmmParams& params, const Corpus& corpus, int jobs = 1);

}  // namespace crfae
