#include "crfae/encoder.hpp"

#include <cmath>
#include <string>

#include "crfae/error.hpp"
#include "crfae/hash.hpp"
#include "crfae/init.hpp"

namespace crfae {
namespace {

struct LayerNormOut {
  Matrix normalized;
  Vector rstd;
};

/// Row-wise standardization (population variance).
LayerNormOut standardize(const Matrix& x, double eps) {
  LayerNormOut out{Matrix(x.rows(), x.cols()), Vector(x.rows())};
  const double width = static_cast<double>(x.cols());
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    double mean = x.row(i).sum() / width;
    double var = (x.row(i).array() - mean).square().sum() / width;
    double rstd = 1.0 / std::sqrt(var + eps);
    out.rstd(i) = rstd;
    out.normalized.row(i) = (x.row(i).array() - mean) * rstd;
  }
  return out;
}

Matrix affine(const Matrix& normalized, const Matrix& gain, const Matrix& bias) {
  return (normalized.array().rowwise() * gain.row(0).array()).rowwise() + bias.row(0).array();
}

/// Given dL/d(normalized), returns dL/dx for the standardization.
Matrix standardize_backward(const Matrix& grad_norm, const Matrix& normalized, const Vector& rstd) {
  Matrix g(grad_norm.rows(), grad_norm.cols());
  const double width = static_cast<double>(grad_norm.cols());
  for (Eigen::Index i = 0; i < grad_norm.rows(); ++i) {
    double mean_g = grad_norm.row(i).sum() / width;
    double mean_gx = grad_norm.row(i).dot(normalized.row(i)) / width;
    g.row(i) = rstd(i) * (grad_norm.row(i).array() - mean_g - normalized.row(i).array() * mean_gx);
  }
  return g;
}

/// Inverted-dropout multipliers: 0 or 1 / (1 - rate).
Matrix dropout_mask(Eigen::Index rows, Eigen::Index cols, double rate, std::uint64_t seed,
                    std::uint64_t salt) {
  Matrix mask(rows, cols);
  const double keep_scale = 1.0 / (1.0 - rate);
  for (Eigen::Index i = 0; i < mask.size(); ++i) {
    double u = 0.5 * (unit_hash(seed, salt, static_cast<std::uint64_t>(i), 0) + 1.0);
    mask.data()[i] = u < rate ? 0.0 : keep_scale;
  }
  return mask;
}

}  // namespace

CrfAeParams CrfAeParams::init(std::size_t mixed_layers, std::size_t dim, std::size_t bottleneck,
                              std::size_t tags, std::size_t features, std::uint64_t seed) {
  const auto k = static_cast<Eigen::Index>(tags);
  const auto d = static_cast<Eigen::Index>(dim);
  const auto dp = static_cast<Eigen::Index>(bottleneck);
  UniformInit uniform(seed, 0.1);
  CrfAeParams p;
  p.mix_logits = Matrix::Zero(1, static_cast<Eigen::Index>(mixed_layers));
  p.gamma = Matrix::Ones(1, 1);
  p.ln_in_gain = Matrix::Ones(1, d);
  p.ln_in_bias = Matrix::Zero(1, d);
  p.w_mlp = uniform.matrix(dim, bottleneck);
  p.b_mlp = Matrix::Zero(1, dp);
  p.w_score = uniform.matrix(bottleneck, tags);
  p.b_score = Matrix::Zero(1, k);
  p.ln_score_gain = Matrix::Ones(1, k);
  p.ln_score_bias = Matrix::Zero(1, k);
  p.trans = Matrix::Zero(k, k);
  p.start = Matrix::Zero(1, k);
  p.theta = Matrix::Zero(k, static_cast<Eigen::Index>(features));
  return p;
}

#define CRFAE_TENSORS(REF)                                                  \
  return {{"encoder.mix_logits", &mix_logits, ParamGroup::kScalarMix, true}, \
          {"encoder.gamma", &gamma, ParamGroup::kScalarMix, true},           \
          {"encoder.ln_in_gain", &ln_in_gain, ParamGroup::kEncoder, false},  \
          {"encoder.ln_in_bias", &ln_in_bias, ParamGroup::kEncoder, false},  \
          {"encoder.w_mlp", &w_mlp, ParamGroup::kEncoder, true},             \
          {"encoder.b_mlp", &b_mlp, ParamGroup::kEncoder, true},             \
          {"encoder.w_score", &w_score, ParamGroup::kEncoder, true},         \
          {"encoder.b_score", &b_score, ParamGroup::kEncoder, true},         \
          {"encoder.ln_score_gain", &ln_score_gain, ParamGroup::kEncoder, false}, \
          {"encoder.ln_score_bias", &ln_score_bias, ParamGroup::kEncoder, false}, \
          {"encoder.trans", &trans, ParamGroup::kEncoder, true},             \
          {"encoder.start", &start, ParamGroup::kEncoder, true},             \
          {"decoder.theta", &theta, ParamGroup::kDecoder, true}}

std::vector<TensorRef> CrfAeParams::tensors() { CRFAE_TENSORS(TensorRef); }
std::vector<ConstTensorRef> CrfAeParams::tensors() const { CRFAE_TENSORS(ConstTensorRef); }

#undef CRFAE_TENSORS

std::vector<Matrix> select_layers(const SentenceEmbedding& embedding, const EncoderConfig& config) {
  std::vector<Matrix> out;
  if (config.layers.empty()) {
    for (std::uint32_t k = 0; k < embedding.layers; ++k) out.push_back(embedding.layer(k));
  } else {
    for (auto k : config.layers) {
      if (k >= embedding.layers) {
        throw MismatchError("layer " + std::to_string(k) + " requested but the embedding has " +
                            std::to_string(embedding.layers));
      }
      out.push_back(embedding.layer(k));
    }
  }
  return out;
}

Matrix encoder_unary_scores(const CrfAeParams& params, const EncoderConfig& config,
                            const SentenceEmbedding& embedding, bool train,
                            std::uint64_t dropout_seed, EncoderCache* cache) {
  EncoderCache local;
  EncoderCache& c = cache ? *cache : local;
  c.layers = select_layers(embedding, config);
  if (static_cast<Eigen::Index>(c.layers.size()) != params.mix_logits.cols()) {
    throw MismatchError("encoder expects " + std::to_string(params.mix_logits.cols()) +
                        " mixed layers, got " + std::to_string(c.layers.size()));
  }
  if (static_cast<std::size_t>(embedding.dim) != params.dim()) {
    throw MismatchError("encoder expects dimension " + std::to_string(params.dim()) + ", embedding has " +
                        std::to_string(embedding.dim));
  }
  const bool drop = train && config.dropout > 0.0;

  c.mix_weights = scalar_mix_weights(params.mix_logits.row(0).transpose());
  c.mixed = scalar_mix(c.layers, params.mix_logits.row(0).transpose(), 1.0);
  Matrix m = params.gamma(0, 0) * c.mixed;
  if (config.minus) m = minus_op(m);
  if (drop) {
    c.drop_in = dropout_mask(m.rows(), m.cols(), config.dropout, dropout_seed, 1);
    m = m.cwiseProduct(c.drop_in);
  } else {
    c.drop_in.resize(0, 0);
  }

  auto ln_in = standardize(m, config.layer_norm_eps);
  c.norm_in = std::move(ln_in.normalized);
  c.rstd_in = std::move(ln_in.rstd);
  c.ln_in = affine(c.norm_in, params.ln_in_gain, params.ln_in_bias);

  c.pre_act = (c.ln_in * params.w_mlp).rowwise() + params.b_mlp.row(0);
  Matrix hidden = c.pre_act.unaryExpr([&](double a) { return a > 0.0 ? a : config.leaky_slope * a; });
  if (drop) {
    c.drop_hidden = dropout_mask(hidden.rows(), hidden.cols(), config.dropout, dropout_seed, 2);
    hidden = hidden.cwiseProduct(c.drop_hidden);
  } else {
    c.drop_hidden.resize(0, 0);
  }
  c.hidden = std::move(hidden);

  Matrix z = (c.hidden * params.w_score).rowwise() + params.b_score.row(0);
  auto ln_score = standardize(z, config.layer_norm_eps);
  c.norm_score = std::move(ln_score.normalized);
  c.rstd_score = std::move(ln_score.rstd);
  return affine(c.norm_score, params.ln_score_gain, params.ln_score_bias);
}

void encoder_backward(const CrfAeParams& params, const EncoderConfig& config,
                      const EncoderCache& c, const Matrix& grad_scores, CrfAeParams& grad) {
  // Score LayerNorm.
  grad.ln_score_gain += grad_scores.cwiseProduct(c.norm_score).colwise().sum();
  grad.ln_score_bias += grad_scores.colwise().sum();
  Matrix g_norm = grad_scores.array().rowwise() * params.ln_score_gain.row(0).array();
  Matrix g_z = standardize_backward(g_norm, c.norm_score, c.rstd_score);

  // Scorer projection.
  grad.w_score += c.hidden.transpose() * g_z;
  grad.b_score += g_z.colwise().sum();
  Matrix g_hidden = g_z * params.w_score.transpose();
  if (c.drop_hidden.size() > 0) g_hidden = g_hidden.cwiseProduct(c.drop_hidden);

  // Bottleneck MLP.
  Matrix g_pre = g_hidden.cwiseProduct(
      c.pre_act.unaryExpr([&](double a) { return a > 0.0 ? 1.0 : config.leaky_slope; }));
  grad.w_mlp += c.ln_in.transpose() * g_pre;
  grad.b_mlp += g_pre.colwise().sum();
  Matrix g_ln = g_pre * params.w_mlp.transpose();

  // Input LayerNorm.
  grad.ln_in_gain += g_ln.cwiseProduct(c.norm_in).colwise().sum();
  grad.ln_in_bias += g_ln.colwise().sum();
  Matrix g_norm_in = g_ln.array().rowwise() * params.ln_in_gain.row(0).array();
  Matrix g_m = standardize_backward(g_norm_in, c.norm_in, c.rstd_in);
  if (c.drop_in.size() > 0) g_m = g_m.cwiseProduct(c.drop_in);

  // Minus operation and scalar mix.
  Matrix g_r = config.minus ? minus_op_backward(g_m) : g_m;
  const double gamma = params.gamma(0, 0);
  grad.gamma(0, 0) += g_r.cwiseProduct(c.mixed).sum();
  const auto k = static_cast<Eigen::Index>(c.layers.size());
  Vector g_w(k);
  for (Eigen::Index j = 0; j < k; ++j) g_w(j) = gamma * g_r.cwiseProduct(c.layers[static_cast<std::size_t>(j)]).sum();
  const double mean = c.mix_weights.dot(g_w);
  for (Eigen::Index j = 0; j < k; ++j) grad.mix_logits(0, j) += c.mix_weights(j) * (g_w(j) - mean);
}

}  // namespace crfae
