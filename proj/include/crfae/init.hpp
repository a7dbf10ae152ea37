#pragma once

#include <cstdint>

#include "crfae/hash.hpp"
#include "crfae/tensor.hpp"

namespace crfae {

/// Seeded Uniform(-scale, scale) values from a counter-based hash, so the
/// stream is identical across platforms and standard libraries.
class UniformInit {
 public:
  UniformInit(std::uint64_t seed, double scale) : seed_(seed), scale_(scale) {}

  double next() { return scale_ * unit_hash(seed_, 0x1417, counter_++, 0); }

  Matrix matrix(std::size_t rows, std::size_t cols) {
    Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = next();
    return m;
  }

 private:
  std::uint64_t seed_;
  double scale_;
  std::uint64_t counter_ = 0;
};

}  // namespace crfae
