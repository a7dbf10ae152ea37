#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "crfae/corpus.hpp"

namespace crfae {

using CountMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

/// counts(g, j) = tokens with gold tag g and predicted index j.
struct ContingencyMatrix {
  CountMatrix counts;
  std::int64_t total = 0;

  Eigen::Index gold_size() const { return counts.rows(); }
  Eigen::Index pred_size() const { return counts.cols(); }
};

using TagSequences = std::vector<std::vector<TagId>>;

/// Dimensions default to max id + 1; larger values pad with empty rows/columns.
/// Throws MismatchError naming the first misaligned sentence.
ContingencyMatrix build_contingency(const TagSequences& gold, const TagSequences& pred,
                                    std::size_t gold_size = 0, std::size_t pred_size = 0);

/// Predicted index -> gold tag.
struct TagMapping {
  std::vector<TagId> map;
  std::string source = "self";
};

/// Each index goes to its most frequent gold tag; ties to the lowest gold id.
TagMapping m1_mapping(const ContingencyMatrix& a);

struct M1Result {
  double accuracy = 0.0;
  /// Tokens whose predicted index has no entry in the mapping; scored as gold tag 0.
  std::int64_t unmapped_tokens = 0;
};

M1Result m1_score(const ContingencyMatrix& a, const TagMapping& mapping);

/// Best bijection between predicted indexes and gold tags (Hungarian
/// algorithm on the zero-padded square matrix), as accuracy.
double one_to_one(const ContingencyMatrix& a);

/// Maximum-weight assignment on a square matrix: result[row] = column.
std::vector<Eigen::Index> max_weight_assignment(const Eigen::MatrixXd& weights);

struct VMeasure {
  double homogeneity = 0.0;
  double completeness = 0.0;
  double v_measure = 0.0;
};

VMeasure v_measure(const ContingencyMatrix& a, double beta = 1.0);

struct SplitMetrics {
  double m1 = 0.0;
  double one_to_one = 0.0;
  VMeasure vm;
  std::int64_t tokens = 0;
  std::int64_t unmapped_tokens = 0;
};

struct EvalReport {
  SplitMetrics dev;
  std::optional<SplitMetrics> test;
  TagMapping mapping;
};

/// M-1 mapping from dev, applied to dev and test; 1-1 and VM per split.
EvalReport evaluate_run(const TagSequences& dev_gold, const TagSequences& dev_pred,
                        const TagSequences* test_gold = nullptr, const TagSequences* test_pred = nullptr);

/// All three metrics on one split given an externally chosen M-1 mapping.
SplitMetrics evaluate_split(const TagSequences& gold, const TagSequences& pred, const TagMapping& mapping);

struct MeanStd {
  double mean = 0.0;
  double stddev = 0.0;  // population
};

MeanStd mean_std(std::span<const double> values);

/// Aligned table followed by `key=value` lines with 4 decimals.
std::string format_report(const EvalReport& report);

}  // namespace crfae
