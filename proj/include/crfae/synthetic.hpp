#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "crfae/corpus.hpp"
#include "crfae/tensor.hpp"

namespace crfae {

/// Seeded generative process for end-to-end tests: a Markov chain over tags,
/// each tag emitting from its own word list (Zipfian frequencies) whose words
/// share a tag-specific suffix.
struct SyntheticConfig {
  std::size_t tags = 5;
  std::size_t words_per_tag = 10;
  std::size_t train_sentences = 2000;
  std::size_t dev_sentences = 200;
  std::size_t test_sentences = 200;
  std::size_t min_length = 4;
  std::size_t max_length = 14;
  double zipf_exponent = 1.2;
  /// Peakedness of the transition rows: weights exp(sharpness * u), u ~ U(0,1).
  double transition_sharpness = 4.0;
  std::uint64_t seed = 0;
};

struct SyntheticData {
  Corpus train;
  Corpus dev;
  Corpus test;
  std::vector<std::string> words;  // word list, tag-major
  std::vector<TagId> word_tags;
  Matrix transitions;              // row-stochastic
};

SyntheticData generate_synthetic(const SyntheticConfig& config);

}  // namespace crfae
