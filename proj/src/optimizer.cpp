#include "crfae/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "crfae/error.hpp"

namespace crfae {

double adam_step(std::span<Matrix* const> params, std::span<const Matrix* const> grads,
                 std::span<const double> lrs, AdamState& state, const AdamConfig& config) {
  if (params.size() != grads.size() || params.size() != lrs.size()) {
    throw std::invalid_argument("adam_step: parameter, gradient and rate counts differ");
  }
  if (state.m.empty()) {
    for (const Matrix* p : params) {
      state.m.push_back(Matrix::Zero(p->rows(), p->cols()));
      state.v.push_back(Matrix::Zero(p->rows(), p->cols()));
    }
  }
  if (state.m.size() != params.size()) throw std::invalid_argument("adam_step: state size mismatch");

  double norm_sq = 0.0;
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (grads[i]->rows() != params[i]->rows() || grads[i]->cols() != params[i]->cols() ||
        state.m[i].rows() != params[i]->rows() || state.m[i].cols() != params[i]->cols()) {
      throw std::invalid_argument("adam_step: shape mismatch at tensor " + std::to_string(i));
    }
    norm_sq += grads[i]->squaredNorm();
  }
  const double norm = std::sqrt(norm_sq);
  const double scale = (config.clip > 0.0 && norm > config.clip) ? config.clip / norm : 1.0;

  ++state.step;
  const double t = static_cast<double>(state.step);
  const double correction1 = 1.0 - std::pow(config.beta1, t);
  const double correction2 = 1.0 - std::pow(config.beta2, t);
  for (std::size_t i = 0; i < params.size(); ++i) {
    Matrix g = scale * *grads[i];
    state.m[i] = config.beta1 * state.m[i] + (1.0 - config.beta1) * g;
    state.v[i] = config.beta2 * state.v[i] + (1.0 - config.beta2) * g.cwiseProduct(g);
    auto m_hat = state.m[i].array() / correction1;
    auto v_hat = state.v[i].array() / correction2;
    params[i]->array() -= lrs[i] * m_hat / (v_hat.sqrt() + config.eps);
  }
  return norm;
}

double lr_at_epoch(double base_lr, double epoch, double decay, double period) {
  return base_lr * std::pow(decay, epoch / period);
}

std::vector<std::vector<std::size_t>> make_batches(const Corpus& corpus, std::size_t batch_words,
                                                   std::uint64_t seed) {
  std::vector<std::size_t> order(corpus.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);

  std::vector<std::vector<std::size_t>> batches;
  std::vector<std::size_t> current;
  std::size_t words = 0;
  for (std::size_t s : order) {
    const std::size_t n = corpus.sentences[s].size();
    if (!current.empty() && words + n > batch_words) {
      batches.push_back(std::move(current));
      current.clear();
      words = 0;
    }
    current.push_back(s);
    words += n;
  }
  if (!current.empty()) batches.push_back(std::move(current));
  return batches;
}

}  // namespace crfae
