#pragma once

#include <cstdint>
#include <vector>

#include "crfae/embeddings.hpp"
#include "crfae/params.hpp"

namespace crfae {

struct EncoderConfig {
  /// Embedding-file layers fed to the scalar mix; empty means all of them.
  std::vector<std::uint32_t> layers;
  std::size_t bottleneck = 5;
  double dropout = 0.33;
  double leaky_slope = 1e-2;
  double layer_norm_eps = 1e-5;
  bool minus = true;
};

/// Encoder (phi) and decoder (theta) parameters of the CRF autoencoder.
struct CrfAeParams {
  Matrix mix_logits;     // 1 x K'
  Matrix gamma;          // 1 x 1
  Matrix ln_in_gain;     // 1 x d
  Matrix ln_in_bias;     // 1 x d
  Matrix w_mlp;          // d x d'
  Matrix b_mlp;          // 1 x d'
  Matrix w_score;        // d' x |Y|
  Matrix b_score;        // 1 x |Y|
  Matrix ln_score_gain;  // 1 x |Y|
  Matrix ln_score_bias;  // 1 x |Y|
  Matrix trans;          // |Y| x |Y|
  Matrix start;          // 1 x |Y|
  Matrix theta;          // |Y| x |F|

  /// Weights ~ Uniform(-0.1, 0.1); biases, transitions, theta and mix
  /// logits zero; gamma and LayerNorm gains one.
  static CrfAeParams init(std::size_t mixed_layers, std::size_t dim, std::size_t bottleneck,
                          std::size_t tags, std::size_t features, std::uint64_t seed);

  std::size_t num_tags() const { return static_cast<std::size_t>(trans.rows()); }
  std::size_t dim() const { return static_cast<std::size_t>(w_mlp.rows()); }

  std::vector<TensorRef> tensors();
  std::vector<ConstTensorRef> tensors() const;
};

/// Intermediates of one forward pass, kept for the backward pass.
struct EncoderCache {
  std::vector<Matrix> layers;  // selected h^k, n x d
  Vector mix_weights;
  Matrix mixed;                // sum_k w_k h^k (before gamma)
  Matrix drop_in;              // dropout multipliers on m (empty when off)
  Matrix norm_in;              // standardized m
  Vector rstd_in;
  Matrix ln_in;                // LayerNorm(m)
  Matrix pre_act;              // W ln + b
  Matrix drop_hidden;
  Matrix hidden;               // dropout(LeakyReLU(pre_act))
  Matrix norm_score;
  Vector rstd_score;
};

/// n x |Y| unary scores s(x, y_i) = LayerNorm(W_s c_i + b_s)[y_i] with
/// c_i = LeakyReLU(W LayerNorm(m_i) + b) and m the minus-op of the scalar mix.
/// Dropout on m_i and c_i only when `train`; masks derive from `dropout_seed`.
Matrix encoder_unary_scores(const CrfAeParams& params, const EncoderConfig& config,
                            const SentenceEmbedding& embedding, bool train,
                            std::uint64_t dropout_seed, EncoderCache* cache = nullptr);

/// Accumulates dL/dphi into `grad` given dL/dscores.
void encoder_backward(const CrfAeParams& params, const EncoderConfig& config,
                      const EncoderCache& cache, const Matrix& grad_scores, CrfAeParams& grad);

/// Selected layers of one sentence as double matrices.
std::vector<Matrix> select_layers(const SentenceEmbedding& embedding, const EncoderConfig& config);

}  // namespace crfae
