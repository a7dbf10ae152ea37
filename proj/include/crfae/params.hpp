#pragma once

#include <string>
#include <vector>

#include "crfae/tensor.hpp"

namespace crfae {

/// Optimizer groups. Each training stage decides which groups move and at
/// which learning rate.
enum class ParamGroup { kHmm, kEncoder, kScalarMix, kDecoder };

struct TensorRef {
  std::string name;
  Matrix* value;
  ParamGroup group;
  bool regularized;  // included in the L2 term
};

struct ConstTensorRef {
  std::string name;
  const Matrix* value;
  ParamGroup group;
  bool regularized;
};

/// Everything a parameter struct needs to offer:
///   std::vector<TensorRef> tensors();
///   std::vector<ConstTensorRef> tensors() const;
template <class P>
P zeros_like(const P& params) {
  P out = params;
  for (auto& t : out.tensors()) t.value->setZero();
  return out;
}

/// Sum of squares over the regularized tensors.
template <class P>
double l2_norm_sq(const P& params) {
  double total = 0.0;
  for (const auto& t : params.tensors()) {
    if (t.regularized) total += t.value->squaredNorm();
  }
  return total;
}

/// Adds l2 * ||params||^2 to the loss and its gradient to `grad`.
template <class P>
double add_l2(const P& params, P& grad, double l2) {
  if (l2 == 0.0) return 0.0;
  auto src = params.tensors();
  auto dst = grad.tensors();
  double total = 0.0;
  for (std::size_t i = 0; i < src.size(); ++i) {
    if (!src[i].regularized) continue;
    total += src[i].value->squaredNorm();
    *dst[i].value += 2.0 * l2 * *src[i].value;
  }
  return l2 * total;
}

template <class P>
void add_scaled(P& dst, const P& src, double scale = 1.0) {
  auto d = dst.tensors();
  auto s = src.tensors();
  for (std::size_t i = 0; i < d.size(); ++i) *d[i].value += scale * *s[i].value;
}

}  // namespace crfae
