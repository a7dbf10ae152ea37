#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "crfae/fhmm.hpp"
#include "crfae/hmm.hpp"
#include "oracles.hpp"

using namespace crfae;

namespace {

std::vector<std::size_t> all(const Corpus& c) {
  std::vector<std::size_t> idx(c.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  return idx;
}

/// -sum_s log sum_y p(x, y) by enumeration; OOV tokens contribute log 1.
double hmm_enumerated_loss(const HmmParams& p, const Corpus& corpus) {
  Matrix li = oracle::log_softmax_rows(p.init);
  Matrix lt = oracle::log_softmax_rows(p.trans);
  Matrix le = oracle::log_softmax_rows(p.emit);
  double loss = 0.0;
  for (const auto& s : corpus.sentences) {
    std::vector<double> joint;
    oracle::for_each_sequence(static_cast<int>(s.size()), static_cast<int>(p.num_tags()),
                              [&](const std::vector<TagId>& y) {
                                double v = li(0, y[0]);
                                for (std::size_t i = 0; i < y.size(); ++i) {
                                  if (i > 0) v += lt(y[i - 1], y[i]);
                                  if (s.word_ids[i] >= 0) v += le(y[i], s.word_ids[i]);
                                }
                                joint.push_back(v);
                              });
    loss -= oracle::log_sum_exp(joint);
  }
  return loss;
}

}  // namespace

TEST_SUITE("hmm") {
  TEST_CASE("single tag: loss is the emission log-likelihood") {
    auto f = oracle::make_fixture(1, 5, 4, 3, 2, 4, false);
    auto p = HmmParams::uniform_random(1, f.train.vocab->size(), 7, 1.0);
    Matrix le = oracle::log_softmax_rows(p.emit);
    double expected = 0.0;
    for (const auto& s : f.batch.sentences) {
      for (auto x : s.word_ids) expected -= le(0, x);
    }
    CHECK(hmm_neg_loglik(p, f.batch, all(f.batch), nullptr) == doctest::Approx(expected).epsilon(1e-12));
  }

  TEST_CASE("uniform parameters: n log |V| per sentence") {
    auto f = oracle::make_fixture(2, 5, 4, 4, 2, 4, false);
    const std::size_t v = f.train.vocab->size();
    auto p = HmmParams::zeros(3, v);
    for (std::size_t s = 0; s < f.batch.size(); ++s) {
      std::vector<std::size_t> one = {s};
      const double n = static_cast<double>(f.batch.sentences[s].size());
      CHECK(hmm_neg_loglik(p, f.batch, one, nullptr) == doctest::Approx(n * std::log(static_cast<double>(v))));
    }
  }

  TEST_CASE("matches enumeration and finite differences") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      auto f = oracle::make_fixture(10 + seed, 6, 4, 3, 2, 4, true);
      auto p = HmmParams::uniform_random(3, f.train.vocab->size(), seed, 1.0);
      const auto batch = all(f.batch);
      CHECK(std::abs(hmm_neg_loglik(p, f.batch, batch, nullptr) - hmm_enumerated_loss(p, f.batch)) <= 1e-9);

      HmmParams grad;
      LossOptions opts{0.01, 1};
      const double loss = hmm_neg_loglik(p, f.batch, batch, &grad, opts);
      CHECK(loss == doctest::Approx(hmm_neg_loglik(p, f.batch, batch, nullptr, opts)).epsilon(1e-12));
      auto checks = oracle::check_gradient<HmmParams>(
          p, grad, [&](const HmmParams& q) { return hmm_neg_loglik(q, f.batch, batch, nullptr, opts); }, 20,
          seed);
      CHECK(oracle::max_rel_error(checks) <= 1e-4);
    }
  }

  TEST_CASE("property: negative log-likelihood is non-negative") {
    std::mt19937_64 rng(3);
    auto f = oracle::make_fixture(3, 6, 4, 5, 2, 4, false);
    for (int t = 0; t < 50; ++t) {
      auto p = HmmParams::uniform_random(1 + rng() % 4, f.train.vocab->size(), rng(), 3.0);
      for (std::size_t s = 0; s < f.batch.size(); ++s) {
        std::vector<std::size_t> one = {s};
        CHECK(hmm_neg_loglik(p, f.batch, one, nullptr) >= 0.0);
      }
    }
  }

  TEST_CASE("empty batch is rejected") {
    auto f = oracle::make_fixture(4);
    auto p = HmmParams::zeros(2, f.train.vocab->size());
    std::vector<std::size_t> none;
    CHECK_THROWS(hmm_neg_loglik(p, f.batch, none, nullptr));
  }

  TEST_CASE("decode returns one tag per token") {
    auto f = oracle::make_fixture(5);
    auto p = HmmParams::uniform_random(3, f.train.vocab->size(), 5, 1.0);
    auto tags = hmm_decode(p, f.batch);
    REQUIRE(tags.size() == f.batch.size());
    for (std::size_t s = 0; s < tags.size(); ++s) CHECK(tags[s].size() == f.batch.sentences[s].size());
  }
}

TEST_SUITE("fhmm") {
  TEST_CASE("emission table closed forms") {
    auto f = oracle::make_fixture(6);
    const auto& fm = f.featurizer->vocab_features();
    Matrix theta = Matrix::Zero(3, static_cast<Eigen::Index>(f.featurizer->num_features()));
    auto table = fhmm_emission_table(theta, fm);
    const double expected = -std::log(static_cast<double>(fm.rows()));
    CHECK((table.log_probs.array() - expected).abs().maxCoeff() <= 1e-12);

    // Two words, one tag, score gap delta on a feature only the first has.
    FeatureMatrix two({FeatureVector{{0}}, FeatureVector{{1}}}, 2);
    Matrix t2(1, 2);
    const double delta = 0.7;
    t2 << delta, 0.0;
    auto tab2 = fhmm_emission_table(t2, two);
    CHECK(std::exp(tab2.log_probs(0, 0)) == doctest::Approx(1.0 / (1.0 + std::exp(-delta))));
    CHECK(std::exp(tab2.log_probs(0, 1)) == doctest::Approx(1.0 / (1.0 + std::exp(delta))));
  }

  TEST_CASE("emission table matches the scalar softmax oracle and rows sum to one") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-2, 2);
    // |V| = 6, |F| = 10.
    std::vector<FeatureVector> rows;
    for (int x = 0; x < 6; ++x) rows.push_back(FeatureVector{{x, 6 + x % 4}});
    FeatureMatrix fm(rows, 10);
    for (int t = 0; t < 20; ++t) {
      Matrix theta(4, 10);
      for (Eigen::Index i = 0; i < theta.size(); ++i) theta.data()[i] = u(rng);
      auto table = fhmm_emission_table(theta, fm);
      CHECK((table.log_probs - oracle::emission_log_probs(theta, fm)).cwiseAbs().maxCoeff() <= 1e-12);
      for (Eigen::Index y = 0; y < 4; ++y) CHECK(std::abs(table.log_probs.row(y).array().exp().sum() - 1.0) <= 1e-9);
      auto ref = fhmm_emission_table_reference(theta, fm);
      CHECK(ref.log_probs == table.log_probs);
    }
  }

  TEST_CASE("theta = 0 reduces to an HMM with uniform emissions") {
    auto f = oracle::make_fixture(8, 6, 4, 4, 2, 4, false);
    auto fp = FhmmParams::uniform_random(3, f.featurizer->num_features(), 1, 1.0);
    fp.theta.setZero();
    HmmParams hp;
    hp.init = fp.init;
    hp.trans = fp.trans;
    hp.emit = Matrix::Zero(3, static_cast<Eigen::Index>(f.train.vocab->size()));
    const auto batch = all(f.batch);
    CHECK(fhmm_neg_loglik(fp, f.batch, batch, *f.featurizer, nullptr) ==
          doctest::Approx(hmm_neg_loglik(hp, f.batch, batch, nullptr)).epsilon(1e-12));
  }

  TEST_CASE("matches enumeration and finite differences, with OOV tokens") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      auto f = oracle::make_fixture(20 + seed, 6, 4, 3, 2, 4, true);
      auto p = FhmmParams::uniform_random(1 + seed % 3, f.featurizer->num_features(), seed, 1.0);
      const auto batch = all(f.batch);

      Matrix li = oracle::log_softmax_rows(p.init);
      Matrix lt = oracle::log_softmax_rows(p.trans);
      double expected = 0.0;
      for (const auto& s : f.batch.sentences) {
        Matrix le = oracle::token_log_emissions(p.theta, *f.featurizer, s);
        std::vector<double> joint;
        oracle::for_each_sequence(static_cast<int>(s.size()), static_cast<int>(p.num_tags()),
                                  [&](const std::vector<TagId>& y) {
                                    double v = li(0, y[0]);
                                    for (std::size_t i = 0; i < y.size(); ++i) {
                                      if (i > 0) v += lt(y[i - 1], y[i]);
                                      v += le(static_cast<Eigen::Index>(i), y[i]);
                                    }
                                    joint.push_back(v);
                                  });
        expected -= oracle::log_sum_exp(joint);
      }
      CHECK(std::abs(fhmm_neg_loglik(p, f.batch, batch, *f.featurizer, nullptr) - expected) <= 1e-9);

      FhmmParams grad;
      LossOptions opts{0.01, 1};
      fhmm_neg_loglik(p, f.batch, batch, *f.featurizer, &grad, opts);
      auto checks = oracle::check_gradient<FhmmParams>(
          p, grad,
          [&](const FhmmParams& q) { return fhmm_neg_loglik(q, f.batch, batch, *f.featurizer, nullptr, opts); }, 20,
          seed);
      CHECK(oracle::max_rel_error(checks) <= 1e-4);
    }
  }

  TEST_CASE("OOV tokens use the training normalizer") {
    auto f = oracle::make_fixture(9, 5, 4, 3, 2, 4, true);
    auto p = FhmmParams::uniform_random(2, f.featurizer->num_features(), 3, 1.0);
    auto table = fhmm_emission_table(p.theta, f.featurizer->vocab_features());
    const auto& s = f.batch.sentences[0];
    REQUIRE(s.word_ids.back() == kOovWord);
    Matrix le = sentence_log_emissions(table, p.theta, *f.featurizer, s);
    CHECK((le - oracle::token_log_emissions(p.theta, *f.featurizer, s)).cwiseAbs().maxCoeff() <= 1e-12);
  }
}
