#include "crfae/synthetic.hpp"

#include <cmath>
#include <random>
#include <set>
#include <stdexcept>

namespace crfae {
namespace {

const char* const kSuffixes[] = {"ing", "ed", "ly", "ion", "ous", "ful", "ish", "ize", "ant", "ity", "al", "er"};
const char kConsonants[] = "bdfgklmnprstvz";
const char kVowels[] = "aeiou";

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform() { return static_cast<double>(engine_() >> 11) * (1.0 / 9007199254740992.0); }
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(uniform() * static_cast<double>(n)); }
  std::size_t sample(const std::vector<double>& cdf) {
    double u = uniform() * cdf.back();
    std::size_t i = 0;
    while (i + 1 < cdf.size() && cdf[i] <= u) ++i;
    return i;
  }

 private:
  std::mt19937_64 engine_;
};

std::vector<double> cumulative(const std::vector<double>& w) {
  std::vector<double> c(w.size());
  double total = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) c[i] = (total += w[i]);
  return c;
}

}  // namespace

SyntheticData generate_synthetic(const SyntheticConfig& config) {
  if (config.tags < 1 || config.tags > std::size(kSuffixes)) {
    throw std::invalid_argument("synthetic tag count must be in [1, " + std::to_string(std::size(kSuffixes)) + "]");
  }
  if (config.words_per_tag < 1 || config.min_length < 1 || config.max_length < config.min_length) {
    throw std::invalid_argument("bad synthetic corpus configuration");
  }
  Rng rng(config.seed);
  SyntheticData data;

  std::set<std::string> seen;
  for (std::size_t t = 0; t < config.tags; ++t) {
    for (std::size_t k = 0; k < config.words_per_tag; ++k) {
      std::string word;
      do {
        std::string stem;
        const std::size_t syllables = 1 + rng.below(2);
        for (std::size_t s = 0; s < syllables; ++s) {
          stem += kConsonants[rng.below(sizeof kConsonants - 1)];
          stem += kVowels[rng.below(sizeof kVowels - 1)];
        }
        stem += kConsonants[rng.below(sizeof kConsonants - 1)];
        word = stem + kSuffixes[t];
      } while (!seen.insert(word).second);
      data.words.push_back(word);
      data.word_tags.push_back(static_cast<TagId>(t));
    }
  }

  const auto k = static_cast<Eigen::Index>(config.tags);
  data.transitions.resize(k, k);
  std::vector<std::vector<double>> trans_cdf(config.tags);
  for (Eigen::Index a = 0; a < k; ++a) {
    std::vector<double> w(config.tags);
    for (auto& x : w) x = std::exp(config.transition_sharpness * rng.uniform());
    double total = 0.0;
    for (double x : w) total += x;
    for (Eigen::Index b = 0; b < k; ++b) data.transitions(a, b) = w[static_cast<std::size_t>(b)] / total;
    trans_cdf[static_cast<std::size_t>(a)] = cumulative(w);
  }
  std::vector<double> emit_w(config.words_per_tag);
  for (std::size_t i = 0; i < emit_w.size(); ++i) {
    emit_w[i] = 1.0 / std::pow(static_cast<double>(i + 1), config.zipf_exponent);
  }
  const auto emit_cdf = cumulative(emit_w);
  const std::vector<double> start_cdf = cumulative(std::vector<double>(config.tags, 1.0));

  auto sample_split = [&](std::size_t count, std::vector<std::vector<std::string>>& words,
                          std::vector<std::vector<std::string>>& tags) {
    for (std::size_t s = 0; s < count; ++s) {
      const std::size_t n = config.min_length + rng.below(config.max_length - config.min_length + 1);
      std::vector<std::string> w;
      std::vector<std::string> y;
      std::size_t tag = rng.sample(start_cdf);
      for (std::size_t i = 0; i < n; ++i) {
        if (i > 0) tag = rng.sample(trans_cdf[tag]);
        const std::size_t word = tag * config.words_per_tag + rng.sample(emit_cdf);
        w.push_back(data.words[word]);
        y.push_back("T" + std::to_string(tag));
      }
      words.push_back(std::move(w));
      tags.push_back(std::move(y));
    }
  };

  std::vector<std::vector<std::string>> w_train, y_train, w_dev, y_dev, w_test, y_test;
  sample_split(config.train_sentences, w_train, y_train);
  sample_split(config.dev_sentences, w_dev, y_dev);
  sample_split(config.test_sentences, w_test, y_test);

  // Tag ids follow T0..Tk-1 regardless of first appearance.
  auto tagset = std::make_shared<TagSet>();
  for (std::size_t t = 0; t < config.tags; ++t) tagset->add("T" + std::to_string(t));
  LoadOptions opts;
  opts.tagset = tagset;
  data.train = make_corpus(w_train, &y_train, opts);
  opts.vocab = data.train.vocab;
  opts.allow_empty = true;
  data.dev = make_corpus(w_dev, &y_dev, opts);
  data.test = make_corpus(w_test, &y_test, opts);
  return data;
}

}  // namespace crfae
