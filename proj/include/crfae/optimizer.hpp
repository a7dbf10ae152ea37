#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "crfae/corpus.hpp"
#include "crfae/tensor.hpp"

namespace crfae {

struct AdamConfig {
  double beta1 = 0.9;
  double beta2 = 0.9;
  double eps = 1e-8;
  double clip = 5.0;  // global L2 norm; <= 0 disables clipping
};

struct AdamState {
  std::vector<Matrix> m;
  std::vector<Matrix> v;
  std::int64_t step = 0;
};

/// One Adam update over the trainable tensors. `lrs[i]` is the learning rate
/// of tensor i, so several groups can share the state and step counter.
/// Gradients are jointly clipped to the global norm first. Returns the
/// unclipped global norm.
double adam_step(std::span<Matrix* const> params, std::span<const Matrix* const> grads,
                 std::span<const double> lrs, AdamState& state, const AdamConfig& config = {});

/// base_lr * decay^(epoch / period), continuous exponent.
double lr_at_epoch(double base_lr, double epoch, double decay = 0.75, double period = 45.0);

/// Shuffles sentence indexes with `seed`, then packs them greedily so each
/// batch holds at most `batch_words` tokens. An over-long sentence forms its
/// own batch.
std::vector<std::vector<std::size_t>> make_batches(const Corpus& corpus, std::size_t batch_words,
                                                   std::uint64_t seed);

}  // namespace crfae
