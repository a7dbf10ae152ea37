#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "crfae/corpus.hpp"

namespace crfae {

using FeatureId = std::int32_t;

enum class FeatureMode { kWsj, kUd };

/// Word-side feature templates. `kCapitalized` exists only in WSJ mode and
/// `kIsPunct` only in UD mode.
enum class Template : int {
  kWord = 0,
  kSuf1,
  kSuf2,
  kSuf3,
  kHasDigit,
  kHasHyphen,
  kCapitalized,
  kIsPunct,
};
inline constexpr int kNumTemplates = 8;

std::string_view template_name(Template t);

struct FeatureConfig {
  FeatureMode mode = FeatureMode::kWsj;
  std::string language = "none";
  int cutoff = 50;
  bool apply_language_suffix_rules = false;

  std::vector<Template> templates() const;
  /// `mode=..;language=..;cutoff=..;suffix_rules=..`
  std::string fingerprint() const;
};

FeatureMode parse_feature_mode(std::string_view text);
std::string_view to_string(FeatureMode mode);
/// Languages with inflection-stripping rules: de, en, es, fr, it, pt-br.
bool has_suffix_rules(std::string_view language);

/// Cutoff proportional to the corpus size relative to a reference corpus,
/// rounded down (293k tokens against 1M with base 50 gives 14).
int scaled_cutoff(std::size_t tokens, std::size_t reference_tokens, int base_cutoff = 50);

/// Removes inflectional endings before suffix extraction. Languages without
/// rules pass through. Never returns an empty string.
std::string strip_inflection(std::string_view norm_word, std::string_view language);

/// Namespaced feature strings (`Word=John`, `Suf2=hn`, `HasDigit=✗`, ...).
std::vector<std::string> extract_features(std::string_view raw_word, std::string_view norm_word,
                                          const FeatureConfig& config);

/// Sorted feature ids, at most one per template.
struct FeatureVector {
  std::vector<FeatureId> ids;
};

class FeatureIndex {
 public:
  FeatureId resolve(std::string_view feature) const;
  /// Id reserved for unseen or rare features of a template, -1 if inactive.
  FeatureId unk_id(Template t) const { return unk_ids_[static_cast<std::size_t>(t)]; }
  bool is_unk(FeatureId id) const;

  std::size_t size() const { return features_.size(); }
  const std::string& feature(FeatureId id) const { return features_[static_cast<std::size_t>(id)]; }
  std::int64_t count(FeatureId id) const { return counts_[static_cast<std::size_t>(id)]; }
  /// Number of non-UNK entries.
  std::size_t num_kept() const;
  const std::string& fingerprint() const { return fingerprint_; }

  FeatureVector featurize(std::string_view raw_word, std::string_view norm_word,
                          const FeatureConfig& config) const;

  /// Header `#crfae-features <fingerprint>`, then `feature<TAB>id<TAB>count`.
  void write(std::ostream& out) const;
  static FeatureIndex read(std::istream& in, const std::string& source_name);
  static FeatureIndex read(const std::string& path);

  friend FeatureIndex build_feature_index(const Corpus& train, const FeatureConfig& config);

 private:
  FeatureId add(std::string feature, std::int64_t count);

  std::vector<std::string> features_;
  std::vector<std::int64_t> counts_;
  std::unordered_map<std::string, FeatureId> ids_;
  std::vector<FeatureId> unk_ids_ = std::vector<FeatureId>(kNumTemplates, -1);
  std::string fingerprint_;
};

/// Counts feature occurrences per token; features seen fewer than `cutoff`
/// times resolve to their template's UNK id.
FeatureIndex build_feature_index(const Corpus& train, const FeatureConfig& config);

/// Word-type-by-feature incidence in compressed rows.
class FeatureMatrix {
 public:
  FeatureMatrix() = default;
  FeatureMatrix(std::vector<FeatureVector> rows, std::size_t num_features);

  std::size_t rows() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t cols() const { return num_features_; }
  std::span<const FeatureId> row(std::size_t r) const {
    return {ids_.data() + offsets_[r], ids_.data() + offsets_[r + 1]};
  }

 private:
  std::vector<std::size_t> offsets_;
  std::vector<FeatureId> ids_;
  std::size_t num_features_ = 0;
};

FeatureMatrix featurize_vocabulary(const Vocabulary& vocab, const FeatureIndex& index,
                                   const FeatureConfig& config);

/// Bundles a training vocabulary with its feature index. Known words use the
/// precomputed rows; out-of-vocabulary tokens are featurized on the fly.
class Featurizer {
 public:
  Featurizer(std::shared_ptr<const Vocabulary> vocab, FeatureIndex index, FeatureConfig config);

  const Vocabulary& vocab() const { return *vocab_; }
  const FeatureIndex& index() const { return index_; }
  const FeatureConfig& config() const { return config_; }
  const FeatureMatrix& vocab_features() const { return matrix_; }
  std::size_t num_features() const { return index_.size(); }

  FeatureVector token(const Sentence& sentence, std::size_t i) const;

 private:
  std::shared_ptr<const Vocabulary> vocab_;
  FeatureIndex index_;
  FeatureConfig config_;
  FeatureMatrix matrix_;
};

}  // namespace crfae
