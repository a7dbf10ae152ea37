#pragma once

#include <Eigen/Core>

namespace crfae {

/// Row-major so that rows are tokens and flat storage matches the on-disk order.
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;
using RowVector = Eigen::RowVectorXd;

}  // namespace crfae
