#include "crfae/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "crfae/error.hpp"

namespace crfae {

ContingencyMatrix build_contingency(const TagSequences& gold, const TagSequences& pred, std::size_t gold_size,
                                    std::size_t pred_size) {
  if (gold.size() != pred.size()) {
    throw MismatchError("gold has " + std::to_string(gold.size()) + " sentences, prediction has " +
                        std::to_string(pred.size()));
  }
  TagId max_g = -1;
  TagId max_p = -1;
  for (std::size_t s = 0; s < gold.size(); ++s) {
    if (gold[s].size() != pred[s].size()) {
      throw MismatchError("sentence " + std::to_string(s) + ": gold length " + std::to_string(gold[s].size()) +
                          ", prediction length " + std::to_string(pred[s].size()));
    }
    for (std::size_t i = 0; i < gold[s].size(); ++i) {
      if (gold[s][i] < 0 || pred[s][i] < 0) {
        throw MismatchError("sentence " + std::to_string(s) + " token " + std::to_string(i) + ": negative tag id");
      }
      max_g = std::max(max_g, gold[s][i]);
      max_p = std::max(max_p, pred[s][i]);
    }
  }
  ContingencyMatrix a;
  a.counts = CountMatrix::Zero(std::max<Eigen::Index>(max_g + 1, static_cast<Eigen::Index>(gold_size)),
                               std::max<Eigen::Index>(max_p + 1, static_cast<Eigen::Index>(pred_size)));
  for (std::size_t s = 0; s < gold.size(); ++s) {
    for (std::size_t i = 0; i < gold[s].size(); ++i) ++a.counts(gold[s][i], pred[s][i]);
  }
  a.total = a.counts.sum();
  return a;
}

TagMapping m1_mapping(const ContingencyMatrix& a) {
  TagMapping mapping;
  mapping.map.assign(static_cast<std::size_t>(a.pred_size()), 0);
  for (Eigen::Index j = 0; j < a.pred_size(); ++j) {
    Eigen::Index best = 0;
    for (Eigen::Index g = 1; g < a.gold_size(); ++g) {
      if (a.counts(g, j) > a.counts(best, j)) best = g;
    }
    mapping.map[static_cast<std::size_t>(j)] = static_cast<TagId>(best);
  }
  return mapping;
}

M1Result m1_score(const ContingencyMatrix& a, const TagMapping& mapping) {
  M1Result r;
  if (a.total == 0) return r;
  std::int64_t correct = 0;
  for (Eigen::Index j = 0; j < a.pred_size(); ++j) {
    TagId g = 0;
    if (static_cast<std::size_t>(j) < mapping.map.size()) {
      g = mapping.map[static_cast<std::size_t>(j)];
    } else {
      r.unmapped_tokens += a.counts.col(j).sum();
    }
    if (g < a.gold_size()) correct += a.counts(g, j);
  }
  r.accuracy = static_cast<double>(correct) / static_cast<double>(a.total);
  return r;
}

std::vector<Eigen::Index> max_weight_assignment(const Eigen::MatrixXd& weights) {
  // Shortest augmenting path with potentials, minimizing -weights.
  const Eigen::Index n = weights.rows();
  if (weights.cols() != n) throw std::invalid_argument("assignment matrix must be square");
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(static_cast<std::size_t>(n + 1), 0.0);
  std::vector<double> v(static_cast<std::size_t>(n + 1), 0.0);
  std::vector<Eigen::Index> match(static_cast<std::size_t>(n + 1), 0);  // column -> row (1-based)
  std::vector<Eigen::Index> way(static_cast<std::size_t>(n + 1), 0);
  auto cost = [&](Eigen::Index i, Eigen::Index j) { return -weights(i - 1, j - 1); };
  for (Eigen::Index i = 1; i <= n; ++i) {
    match[0] = i;
    Eigen::Index j0 = 0;
    std::vector<double> minv(static_cast<std::size_t>(n + 1), inf);
    std::vector<char> used(static_cast<std::size_t>(n + 1), 0);
    do {
      used[static_cast<std::size_t>(j0)] = 1;
      const Eigen::Index i0 = match[static_cast<std::size_t>(j0)];
      double delta = inf;
      Eigen::Index j1 = 0;
      for (Eigen::Index j = 1; j <= n; ++j) {
        const auto ju = static_cast<std::size_t>(j);
        if (used[ju]) continue;
        double cur = cost(i0, j) - u[static_cast<std::size_t>(i0)] - v[ju];
        if (cur < minv[ju]) {
          minv[ju] = cur;
          way[ju] = j0;
        }
        if (minv[ju] < delta) {
          delta = minv[ju];
          j1 = j;
        }
      }
      for (Eigen::Index j = 0; j <= n; ++j) {
        const auto ju = static_cast<std::size_t>(j);
        if (used[ju]) {
          u[static_cast<std::size_t>(match[ju])] += delta;
          v[ju] -= delta;
        } else {
          minv[ju] -= delta;
        }
      }
      j0 = j1;
    } while (match[static_cast<std::size_t>(j0)] != 0);
    do {
      const Eigen::Index j1 = way[static_cast<std::size_t>(j0)];
      match[static_cast<std::size_t>(j0)] = match[static_cast<std::size_t>(j1)];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<Eigen::Index> row_to_col(static_cast<std::size_t>(n), 0);
  for (Eigen::Index j = 1; j <= n; ++j) {
    row_to_col[static_cast<std::size_t>(match[static_cast<std::size_t>(j)] - 1)] = j - 1;
  }
  return row_to_col;
}

double one_to_one(const ContingencyMatrix& a) {
  if (a.total == 0) return 0.0;
  const Eigen::Index n = std::max(a.gold_size(), a.pred_size());
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  w.topLeftCorner(a.gold_size(), a.pred_size()) = a.counts.cast<double>();
  auto assign = max_weight_assignment(w);
  std::int64_t correct = 0;
  for (Eigen::Index g = 0; g < a.gold_size(); ++g) {
    const Eigen::Index j = assign[static_cast<std::size_t>(g)];
    if (j < a.pred_size()) correct += a.counts(g, j);
  }
  return static_cast<double>(correct) / static_cast<double>(a.total);
}

VMeasure v_measure(const ContingencyMatrix& a, double beta) {
  VMeasure r;
  if (a.total == 0) return r;
  const double n = static_cast<double>(a.total);
  const Eigen::VectorXd gold_tot = a.counts.rowwise().sum().cast<double>();
  const Eigen::VectorXd pred_tot = a.counts.colwise().sum().transpose().cast<double>();

  // Terms are summed in sorted order so that relabeling gold or predicted
  // tags gives bit-identical results.
  auto sorted_sum = [](std::vector<double> terms) {
    std::sort(terms.begin(), terms.end());
    double total = 0.0;
    for (double t : terms) total += t;
    return total;
  };
  auto entropy = [&](const Eigen::VectorXd& totals) {
    std::vector<double> terms;
    for (Eigen::Index i = 0; i < totals.size(); ++i) {
      if (totals(i) > 0) terms.push_back(-totals(i) / n * std::log(totals(i) / n));
    }
    return sorted_sum(std::move(terms));
  };
  const double h_g = entropy(gold_tot);
  const double h_p = entropy(pred_tot);
  std::vector<double> g_given_p, p_given_g;
  for (Eigen::Index g = 0; g < a.gold_size(); ++g) {
    for (Eigen::Index j = 0; j < a.pred_size(); ++j) {
      const double c = static_cast<double>(a.counts(g, j));
      if (c == 0) continue;
      g_given_p.push_back(-c / n * std::log(c / pred_tot(j)));
      p_given_g.push_back(-c / n * std::log(c / gold_tot(g)));
    }
  }
  const double h_g_given_p = sorted_sum(std::move(g_given_p));
  const double h_p_given_g = sorted_sum(std::move(p_given_g));
  r.homogeneity = h_g == 0.0 ? 1.0 : 1.0 - h_g_given_p / h_g;
  r.completeness = h_p == 0.0 ? 1.0 : 1.0 - h_p_given_g / h_p;
  const double denom = beta * r.homogeneity + r.completeness;
  r.v_measure = denom == 0.0 ? 0.0 : (1.0 + beta) * r.homogeneity * r.completeness / denom;
  return r;
}

SplitMetrics evaluate_split(const TagSequences& gold, const TagSequences& pred, const TagMapping& mapping) {
  auto a = build_contingency(gold, pred);
  SplitMetrics m;
  auto m1 = m1_score(a, mapping);
  m.m1 = m1.accuracy;
  m.unmapped_tokens = m1.unmapped_tokens;
  m.one_to_one = one_to_one(a);
  m.vm = v_measure(a);
  m.tokens = a.total;
  return m;
}

EvalReport evaluate_run(const TagSequences& dev_gold, const TagSequences& dev_pred, const TagSequences* test_gold,
                        const TagSequences* test_pred) {
  EvalReport report;
  report.mapping = m1_mapping(build_contingency(dev_gold, dev_pred));
  report.mapping.source = "dev";
  report.dev = evaluate_split(dev_gold, dev_pred, report.mapping);
  if (test_gold && test_pred) report.test = evaluate_split(*test_gold, *test_pred, report.mapping);
  return report;
}

MeanStd mean_std(std::span<const double> values) {
  MeanStd r;
  if (values.empty()) return r;
  for (double v : values) r.mean += v;
  r.mean /= static_cast<double>(values.size());
  double var = 0.0;
  for (double v : values) var += (v - r.mean) * (v - r.mean);
  r.stddev = std::sqrt(var / static_cast<double>(values.size()));
  return r;
}

std::string format_report(const EvalReport& report) {
  std::ostringstream out;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%-6s %8s %8s %8s %8s %8s %8s\n", "split", "tokens", "M-1", "1-1", "VM", "h", "c");
  out << buf;
  auto row = [&](const char* name, const SplitMetrics& m) {
    std::snprintf(buf, sizeof buf, "%-6s %8lld %8.4f %8.4f %8.4f %8.4f %8.4f\n", name,
                  static_cast<long long>(m.tokens), m.m1, m.one_to_one, m.vm.v_measure, m.vm.homogeneity,
                  m.vm.completeness);
    out << buf;
  };
  row("dev", report.dev);
  if (report.test) row("test", *report.test);
  auto keys = [&](const char* prefix, const SplitMetrics& m) {
    std::snprintf(buf, sizeof buf, "%sm1=%.4f\n%sone_to_one=%.4f\n%svm=%.4f\n%shomogeneity=%.4f\n%scompleteness=%.4f\n",
                  prefix, m.m1, prefix, m.one_to_one, prefix, m.vm.v_measure, prefix, m.vm.homogeneity, prefix,
                  m.vm.completeness);
    out << buf;
    if (m.unmapped_tokens > 0) {
      out << prefix << "unmapped_tokens=" << m.unmapped_tokens << "\n";
    }
  };
  keys("dev.", report.dev);
  if (report.test) keys("test.", *report.test);
  out << "mapping_source=" << report.mapping.source << "\n";
  return out.str();
}

}  // namespace crfae
