#include <doctest.h>

#include <cmath>
#include <random>

#include "crfae/lattice.hpp"
#include "oracles.hpp"

using namespace crfae;

namespace {

SequenceLattice zero_lattice(int n, int k) {
  return {Matrix::Zero(n, k), Matrix::Zero(k, k), Vector::Zero(k)};
}

}  // namespace

TEST_SUITE("lattice") {
  TEST_CASE("sequence_score sums start, unary and transitions") {
    std::mt19937_64 rng(3);
    auto lat = oracle::random_lattice(rng, 4, 3);
    std::vector<TagId> y = {2, 0, 1, 1};
    CHECK(sequence_score(lat, y) == doctest::Approx(oracle::path_score(lat, y)).epsilon(1e-12));
    auto one = oracle::random_lattice(rng, 1, 3);
    std::vector<TagId> y0 = {0};
    CHECK(sequence_score(one, y0) == doctest::Approx(one.start(0) + one.unary(0, 0)));
    auto zero = zero_lattice(3, 2);
    std::vector<TagId> any = {1, 0, 1};
    CHECK(sequence_score(zero, any) == 0.0);
    std::vector<TagId> short_y = {0};
    CHECK_THROWS(sequence_score(lat, short_y));
  }

  TEST_CASE("log_partition closed forms") {
    SequenceLattice lat = zero_lattice(1, 2);
    lat.unary << 0.3, -1.2;
    CHECK(log_partition(lat) == doctest::Approx(std::log(std::exp(0.3) + std::exp(-1.2))));
    for (int n = 1; n <= 5; ++n) {
      for (int k = 1; k <= 4; ++k) {
        CHECK(log_partition(zero_lattice(n, k)) == doctest::Approx(n * std::log(static_cast<double>(k))));
      }
    }
  }

  TEST_CASE("log_partition matches enumeration of 243 sequences") {
    std::mt19937_64 rng(11);
    auto lat = oracle::random_lattice(rng, 5, 3);
    CHECK(std::abs(log_partition(lat) - oracle::enumerate(lat).log_z) <= 1e-6);
  }

  TEST_CASE("viterbi ties go to the lowest tag") {
    auto v = viterbi(zero_lattice(4, 3));
    CHECK(v.tags == std::vector<TagId>{0, 0, 0, 0});
    CHECK(v.score == 0.0);
    SequenceLattice lat = zero_lattice(3, 3);
    lat.unary << 0, 2, 1, 3, 0, 1, 0, 0, 5;
    CHECK(viterbi(lat).tags == std::vector<TagId>{1, 0, 2});
  }

  TEST_CASE("viterbi matches enumeration of 4096 sequences") {
    std::mt19937_64 rng(12);
    auto lat = oracle::random_lattice(rng, 6, 4);
    auto e = oracle::enumerate(lat);
    auto v = viterbi(lat);
    CHECK(std::abs(v.score - e.best_score) <= 1e-9);
    CHECK(v.tags == e.best);
  }

  TEST_CASE("posterior marginals closed forms and enumeration") {
    SequenceLattice one = zero_lattice(1, 3);
    one.unary << 0.5, -0.5, 1.0;
    one.start << 0.1, 0.2, -0.3;
    auto m = posterior_marginals(one);
    Vector s = one.start + one.unary.row(0).transpose();
    Vector p = s.array().exp() / s.array().exp().sum();
    for (int y = 0; y < 3; ++y) CHECK(m.unary(0, y) == doctest::Approx(p(y)).epsilon(1e-12));
    CHECK(m.pairwise.empty());

    auto uni = posterior_marginals(zero_lattice(4, 3));
    for (Eigen::Index i = 0; i < uni.unary.size(); ++i) CHECK(uni.unary.data()[i] == doctest::Approx(1.0 / 3));

    std::mt19937_64 rng(13);
    auto lat = oracle::random_lattice(rng, 5, 3);
    auto e = oracle::enumerate(lat);
    auto fb = posterior_marginals(lat);
    CHECK((fb.unary - e.unary).cwiseAbs().maxCoeff() <= 1e-8);
    for (std::size_t i = 0; i < fb.pairwise.size(); ++i) {
      CHECK((fb.pairwise[i] - e.pairwise[i]).cwiseAbs().maxCoeff() <= 1e-8);
    }
  }

  TEST_CASE("brute_force agrees with the dynamic programs on 100 lattices") {
    std::mt19937_64 rng(14);
    for (int t = 0; t < 100; ++t) {
      const int n = 1 + static_cast<int>(rng() % 6);
      const int k = 1 + static_cast<int>(rng() % 4);
      auto lat = oracle::random_lattice(rng, n, k);
      auto bf = brute_force(lat);
      CHECK(std::abs(bf.log_z - log_partition(lat)) <= 1e-6);
      auto v = viterbi(lat);
      CHECK(bf.best.tags == v.tags);
      CHECK(std::abs(bf.best.score - v.score) <= 1e-6);
      CHECK((bf.marginals.unary - posterior_marginals(lat).unary).cwiseAbs().maxCoeff() <= 1e-8);
      // And the library oracle agrees with the test-side one.
      auto e = oracle::enumerate(lat);
      CHECK(std::abs(bf.log_z - e.log_z) <= 1e-9);
      CHECK(bf.best.tags == e.best);
    }
  }

  TEST_CASE("brute_force size guard") {
    CHECK_THROWS_AS(brute_force(zero_lattice(20, 4)), std::length_error);
  }

  TEST_CASE("validate rejects bad lattices") {
    SequenceLattice empty = zero_lattice(0, 2);
    CHECK_THROWS(empty.validate());
    SequenceLattice bad = zero_lattice(2, 2);
    bad.unary(1, 1) = std::nan("");
    CHECK_THROWS(bad.validate());
    SequenceLattice shape = zero_lattice(2, 2);
    shape.start = Vector::Zero(3);
    CHECK_THROWS(shape.validate());
  }

  TEST_CASE("property: path dominance and viterbi optimality") {
    std::mt19937_64 rng(15);
    for (int t = 0; t < 20; ++t) {
      auto lat = oracle::random_lattice(rng, 6, 4);
      const double log_z = log_partition(lat);
      const auto v = viterbi(lat);
      for (int s = 0; s < 1000; ++s) {
        std::vector<TagId> y(6);
        for (auto& tag : y) tag = static_cast<TagId>(rng() % 4);
        const double score = sequence_score(lat, y);
        REQUIRE(score <= log_z);
        REQUIRE(score <= v.score + 1e-12);
      }
    }
  }

  TEST_CASE("property: posterior normalization and pairwise consistency") {
    std::mt19937_64 rng(16);
    for (int t = 0; t < 50; ++t) {
      const int n = 2 + static_cast<int>(rng() % 6);
      auto lat = oracle::random_lattice(rng, n, 4, 5.0);
      auto m = posterior_marginals(lat);
      for (int i = 0; i < n; ++i) CHECK(std::abs(m.unary.row(i).sum() - 1.0) <= 1e-9);
      for (int i = 0; i + 1 < n; ++i) {
        const Matrix& p = m.pairwise[static_cast<std::size_t>(i)];
        CHECK((p.rowwise().sum().transpose() - m.unary.row(i)).cwiseAbs().maxCoeff() <= 1e-8);
        CHECK((p.colwise().sum() - m.unary.row(i + 1)).cwiseAbs().maxCoeff() <= 1e-8);
      }
    }
  }

  TEST_CASE("property: shift invariance at one position") {
    std::mt19937_64 rng(17);
    for (int t = 0; t < 30; ++t) {
      auto lat = oracle::random_lattice(rng, 5, 3);
      auto shifted = lat;
      const int pos = static_cast<int>(rng() % 5);
      const double c = 3.7;
      shifted.unary.row(pos).array() += c;
      CHECK(std::abs(log_partition(shifted) - log_partition(lat) - c) <= 1e-8);
      auto v1 = viterbi(lat);
      auto v2 = viterbi(shifted);
      CHECK(v1.tags == v2.tags);
      CHECK(std::abs(v2.score - v1.score - c) <= 1e-8);
      CHECK((posterior_marginals(lat).unary - posterior_marginals(shifted).unary).cwiseAbs().maxCoeff() <= 1e-8);
    }
  }

  TEST_CASE("property: agreement with brute force up to 4^6") {
    std::mt19937_64 rng(18);
    for (int n = 1; n <= 6; ++n) {
      for (int k = 1; k <= 4; ++k) {
        auto lat = oracle::random_lattice(rng, n, k);
        CHECK(std::abs(log_partition(lat) - oracle::enumerate(lat).log_z) <= 1e-6);
      }
    }
  }
}
