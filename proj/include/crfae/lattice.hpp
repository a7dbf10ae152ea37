#pragma once

#include <span>
#include <vector>

#include "crfae/corpus.hpp"
#include "crfae/tensor.hpp"

namespace crfae {

/// First-order tag lattice in log space. The score of a tag sequence y is
/// start[y_1] + sum_i unary[i, y_i] + sum_{i>1} trans[y_{i-1}, y_i]; there is
/// no end transition.
struct SequenceLattice {
  Matrix unary;  // n x |Y|
  Matrix trans;  // |Y| x |Y|, row = previous tag
  Vector start;  // |Y|

  Eigen::Index length() const { return unary.rows(); }
  Eigen::Index num_tags() const { return unary.cols(); }
  /// Throws if shapes disagree, n = 0, or any entry is non-finite.
  void validate() const;
};

double sequence_score(const SequenceLattice& lattice, std::span<const TagId> tags);

/// Forward algorithm.
double log_partition(const SequenceLattice& lattice);

struct ViterbiResult {
  std::vector<TagId> tags;
  double score = 0.0;
};

/// Ties go to the lowest tag index at every backpointer and at the final state.
ViterbiResult viterbi(const SequenceLattice& lattice);

struct Marginals {
  double log_z = 0.0;
  Matrix unary;               // n x |Y|, rows sum to 1
  std::vector<Matrix> pairwise;  // n-1 matrices, |Y| x |Y|, [i](a, b) = p(y_i = a, y_{i+1} = b)
  /// Sum of the pairwise matrices (expected transition counts).
  Matrix transition_counts() const;
};

/// Forward-backward.
Marginals posterior_marginals(const SequenceLattice& lattice);

struct BruteForceResult {
  double log_z = 0.0;
  ViterbiResult best;
  Marginals marginals;
};

/// Exact quantities by enumerating all |Y|^n sequences (at most 10^6).
BruteForceResult brute_force(const SequenceLattice& lattice);

inline constexpr double kBruteForceLimit = 1e6;

}  // namespace crfae
