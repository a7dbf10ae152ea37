#include "crfae/lattice.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "crfae/error.hpp"

namespace crfae {
namespace {

/// log sum_a exp(v(a)) with max subtraction.
double log_sum_exp(const Eigen::Ref<const RowVector>& v) {
  double m = v.maxCoeff();
  return m + std::log((v.array() - m).exp().sum());
}

/// alpha(i, b) = log sum over prefixes ending in b at position i.
Matrix forward_table(const SequenceLattice& lat) {
  const Eigen::Index n = lat.length(), k = lat.num_tags();
  Matrix alpha(n, k);
  alpha.row(0) = lat.start.transpose() + lat.unary.row(0);
  RowVector column(k);
  for (Eigen::Index i = 1; i < n; ++i) {
    for (Eigen::Index b = 0; b < k; ++b) {
      column = alpha.row(i - 1) + lat.trans.col(b).transpose();
      alpha(i, b) = log_sum_exp(column) + lat.unary(i, b);
    }
  }
  return alpha;
}

/// beta(i, a) = log sum over suffixes after position i given y_i = a.
Matrix backward_table(const SequenceLattice& lat) {
  const Eigen::Index n = lat.length(), k = lat.num_tags();
  Matrix beta(n, k);
  beta.row(n - 1).setZero();
  RowVector row(k);
  for (Eigen::Index i = n - 2; i >= 0; --i) {
    for (Eigen::Index a = 0; a < k; ++a) {
      row = lat.trans.row(a) + lat.unary.row(i + 1) + beta.row(i + 1);
      beta(i, a) = log_sum_exp(row);
    }
  }
  return beta;
}

}  // namespace

void SequenceLattice::validate() const {
  if (unary.rows() < 1 || unary.cols() < 1) throw MismatchError("lattice needs n >= 1 and |Y| >= 1");
  if (trans.rows() != unary.cols() || trans.cols() != unary.cols() || start.size() != unary.cols()) {
    throw MismatchError("lattice shape mismatch");
  }
  if (!unary.allFinite() || !trans.allFinite() || !start.allFinite()) {
    throw std::domain_error("lattice contains non-finite scores");
  }
}

double sequence_score(const SequenceLattice& lat, std::span<const TagId> tags) {
  if (static_cast<Eigen::Index>(tags.size()) != lat.length()) {
    throw MismatchError("tag sequence length " + std::to_string(tags.size()) +
                        " != lattice length " + std::to_string(lat.length()));
  }
  for (TagId t : tags) {
    if (t < 0 || t >= lat.num_tags()) throw MismatchError("tag out of range");
  }
  double s = lat.start(tags[0]) + lat.unary(0, tags[0]);
  for (std::size_t i = 1; i < tags.size(); ++i) {
    s += lat.trans(tags[i - 1], tags[i]) + lat.unary(static_cast<Eigen::Index>(i), tags[i]);
  }
  return s;
}

double log_partition(const SequenceLattice& lat) {
  Matrix alpha = forward_table(lat);
  return log_sum_exp(alpha.row(lat.length() - 1));
}

ViterbiResult viterbi(const SequenceLattice& lat) {
  const Eigen::Index n = lat.length(), k = lat.num_tags();
  Matrix delta(n, k);
  Eigen::Matrix<TagId, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> back(n, k);
  delta.row(0) = lat.start.transpose() + lat.unary.row(0);
  for (Eigen::Index i = 1; i < n; ++i) {
    for (Eigen::Index b = 0; b < k; ++b) {
      double best = -std::numeric_limits<double>::infinity();
      TagId arg = 0;
      for (Eigen::Index a = 0; a < k; ++a) {
        double v = delta(i - 1, a) + lat.trans(a, b);
        if (v > best) {
          best = v;
          arg = static_cast<TagId>(a);
        }
      }
      delta(i, b) = best + lat.unary(i, b);
      back(i, b) = arg;
    }
  }
  ViterbiResult result;
  result.tags.resize(static_cast<std::size_t>(n));
  Eigen::Index last = 0;
  double best = delta(n - 1, 0);
  for (Eigen::Index b = 1; b < k; ++b) {
    if (delta(n - 1, b) > best) {
      best = delta(n - 1, b);
      last = b;
    }
  }
  result.score = best;
  result.tags[static_cast<std::size_t>(n - 1)] = static_cast<TagId>(last);
  for (Eigen::Index i = n - 1; i > 0; --i) {
    result.tags[static_cast<std::size_t>(i - 1)] = back(i, result.tags[static_cast<std::size_t>(i)]);
  }
  return result;
}

Matrix Marginals::transition_counts() const {
  const Eigen::Index k = pairwise.empty() ? unary.cols() : pairwise.front().rows();
  Matrix total = Matrix::Zero(k, k);
  for (const auto& p : pairwise) total += p;
  return total;
}

Marginals posterior_marginals(const SequenceLattice& lat) {
  const Eigen::Index n = lat.length(), k = lat.num_tags();
  Matrix alpha = forward_table(lat);
  Matrix beta = backward_table(lat);
  Marginals out;
  out.log_z = log_sum_exp(alpha.row(n - 1));
  out.unary = ((alpha + beta).array() - out.log_z).exp().matrix();
  out.pairwise.reserve(static_cast<std::size_t>(n > 0 ? n - 1 : 0));
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    Matrix p(k, k);
    for (Eigen::Index a = 0; a < k; ++a) {
      for (Eigen::Index b = 0; b < k; ++b) {
        p(a, b) = std::exp(alpha(i, a) + lat.trans(a, b) + lat.unary(i + 1, b) + beta(i + 1, b) -
                           out.log_z);
      }
    }
    out.pairwise.push_back(std::move(p));
  }
  return out;
}

BruteForceResult brute_force(const SequenceLattice& lat) {
  const Eigen::Index n = lat.length(), k = lat.num_tags();
  if (std::pow(static_cast<double>(k), static_cast<double>(n)) > kBruteForceLimit) {
    throw std::length_error("brute force over " + std::to_string(k) + "^" + std::to_string(n) +
                            " sequences exceeds the 10^6 limit");
  }
  std::vector<TagId> y(static_cast<std::size_t>(n), 0);
  std::vector<double> scores;
  std::vector<std::vector<TagId>> sequences;
  while (true) {
    scores.push_back(sequence_score(lat, y));
    sequences.push_back(y);
    Eigen::Index pos = n - 1;
    while (pos >= 0 && y[static_cast<std::size_t>(pos)] == k - 1) {
      y[static_cast<std::size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
    ++y[static_cast<std::size_t>(pos)];
  }

  BruteForceResult out;
  double max_score = -std::numeric_limits<double>::infinity();
  for (double s : scores) max_score = std::max(max_score, s);
  double total = 0.0;
  for (double s : scores) total += std::exp(s - max_score);
  out.log_z = max_score + std::log(total);

  // Sequences are enumerated in lexicographic order, so the first maximum is
  // the lexicographically smallest optimum.
  std::size_t best = 0;
  for (std::size_t j = 1; j < scores.size(); ++j) {
    if (scores[j] > scores[best]) best = j;
  }
  out.best = {sequences[best], scores[best]};

  out.marginals.log_z = out.log_z;
  out.marginals.unary = Matrix::Zero(n, k);
  out.marginals.pairwise.assign(static_cast<std::size_t>(n > 0 ? n - 1 : 0), Matrix::Zero(k, k));
  for (std::size_t j = 0; j < scores.size(); ++j) {
    double p = std::exp(scores[j] - out.log_z);
    const auto& seq = sequences[j];
    for (Eigen::Index i = 0; i < n; ++i) {
      out.marginals.unary(i, seq[static_cast<std::size_t>(i)]) += p;
      if (i + 1 < n) {
        out.marginals.pairwise[static_cast<std::size_t>(i)](seq[static_cast<std::size_t>(i)],
                                                            seq[static_cast<std::size_t>(i + 1)]) += p;
      }
    }
  }
  return out;
}

}  // namespace crfae
