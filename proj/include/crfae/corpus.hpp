#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace crfae {

using WordId = std::int32_t;
using TagId = std::int32_t;

/// Word id given to tokens whose normalized form is not in the training vocabulary.
inline constexpr WordId kOovWord = -1;

/// Collapses every maximal run of ASCII digits into a single "0".
std::string normalize_word(std::string_view word);

class Vocabulary {
 public:
  /// Returns the id of `word`, inserting it with count 0 when new.
  WordId add(const std::string& word);
  void increment(WordId id) { ++counts_[static_cast<std::size_t>(id)]; }

  std::optional<WordId> find(std::string_view word) const;
  WordId lookup(std::string_view word) const { return find(word).value_or(kOovWord); }

  const std::string& word(WordId id) const { return words_[static_cast<std::size_t>(id)]; }
  std::int64_t count(WordId id) const { return counts_[static_cast<std::size_t>(id)]; }
  std::size_t size() const { return words_.size(); }
  const std::vector<std::string>& words() const { return words_; }

  /// One `word<TAB>count` line per type, in id order.
  void write(std::ostream& out) const;
  static Vocabulary read(const std::string& path);

 private:
  std::vector<std::string> words_;
  std::vector<std::int64_t> counts_;
  std::unordered_map<std::string, WordId> index_;
};

/// Gold tag inventory; ids are assigned in order of first appearance.
class TagSet {
 public:
  TagId add(const std::string& name);
  std::optional<TagId> find(std::string_view name) const;
  const std::string& name(TagId id) const { return names_[static_cast<std::size_t>(id)]; }
  std::size_t size() const { return names_.size(); }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, TagId> index_;
};

struct Sentence {
  std::vector<std::string> words;       // raw surface forms
  std::vector<std::string> norm_words;  // digit-normalized
  std::vector<WordId> word_ids;         // kOovWord when absent from the vocabulary
  std::vector<TagId> gold_tags;         // empty when untagged

  std::size_t size() const { return words.size(); }
  bool has_tags() const { return !gold_tags.empty(); }
};

struct Corpus {
  std::vector<Sentence> sentences;
  std::shared_ptr<const Vocabulary> vocab;
  std::shared_ptr<TagSet> gold_tagset;  // null when untagged

  std::size_t size() const { return sentences.size(); }
  std::size_t num_tokens() const;
  std::size_t max_sentence_length() const;
  bool has_tags() const { return gold_tagset != nullptr; }
  std::vector<std::vector<TagId>> gold_sequences() const;
};

struct LoadOptions {
  bool has_tags = true;
  /// Reuse this vocabulary (dev/test splits); otherwise build one from the file.
  std::shared_ptr<const Vocabulary> vocab;
  /// Extend this tag inventory so several splits share gold ids.
  std::shared_ptr<TagSet> tagset;
  bool allow_empty = false;
};

/// `word` or `word<TAB>tag` per line, blank line between sentences.
Corpus load_vertical(const std::string& path, const LoadOptions& options = {});
Corpus read_vertical(std::istream& in, const std::string& source_name,
                     const LoadOptions& options = {});

/// Reads FORM and UPOS from a CoNLL-U file; comments and multiword ranges skipped.
Corpus load_conllu(const std::string& path, const LoadOptions& options = {});
Corpus read_conllu(std::istream& in, const std::string& source_name,
                   const LoadOptions& options = {});

/// Writes raw words, optionally followed by a tag column. `tags` overrides
/// the gold tags when given.
void write_vertical(std::ostream& out, const Corpus& corpus,
                    const std::vector<std::vector<TagId>>* tags = nullptr);

/// Builds a corpus (and its vocabulary) from already-tokenized sentences.
Corpus make_corpus(const std::vector<std::vector<std::string>>& words,
                   const std::vector<std::vector<std::string>>* tags = nullptr,
                   const LoadOptions& options = {});

}  // namespace crfae
