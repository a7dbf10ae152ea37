#include "crfae/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "crfae/error.hpp"

namespace crfae {

std::string normalize_word(std::string_view word) {
  std::string out;
  out.reserve(word.size());
  bool in_digits = false;
  for (char ch : word) {
    bool digit = ch >= '0' && ch <= '9';
    if (digit) {
      if (!in_digits) out.push_back('0');
    } else {
      out.push_back(ch);
    }
    in_digits = digit;
  }
  return out;
}

WordId Vocabulary::add(const std::string& word) {
  auto [it, inserted] = index_.try_emplace(word, static_cast<WordId>(words_.size()));
  if (inserted) {
    words_.push_back(word);
    counts_.push_back(0);
  }
  return it->second;
}

std::optional<WordId> Vocabulary::find(std::string_view word) const {
  auto it = index_.find(std::string(word));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

void Vocabulary::write(std::ostream& out) const {
  for (std::size_t i = 0; i < words_.size(); ++i) out << words_[i] << '\t' << counts_[i] << '\n';
}

Vocabulary Vocabulary::read(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open vocabulary file: " + path);
  Vocabulary vocab;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto tab = line.rfind('\t');
    if (tab == std::string::npos || tab == 0) throw ParseError(path, line_no, "expected word<TAB>count");
    std::int64_t count = 0;
    auto digits = std::string_view(line).substr(tab + 1);
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), count);
    if (ec != std::errc() || ptr != digits.data() + digits.size() || count < 1) {
      throw ParseError(path, line_no, "bad count");
    }
    auto before = vocab.size();
    WordId id = vocab.add(line.substr(0, tab));
    if (vocab.size() == before) throw ParseError(path, line_no, "duplicate word type");
    vocab.counts_[static_cast<std::size_t>(id)] = count;
  }
  return vocab;
}

TagId TagSet::add(const std::string& name) {
  auto [it, inserted] = index_.try_emplace(name, static_cast<TagId>(names_.size()));
  if (inserted) names_.push_back(name);
  return it->second;
}

std::optional<TagId> TagSet::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Corpus::num_tokens() const {
  std::size_t total = 0;
  for (const auto& s : sentences) total += s.size();
  return total;
}

std::size_t Corpus::max_sentence_length() const {
  std::size_t longest = 0;
  for (const auto& s : sentences) longest = std::max(longest, s.size());
  return longest;
}

std::vector<std::vector<TagId>> Corpus::gold_sequences() const {
  std::vector<std::vector<TagId>> out;
  out.reserve(sentences.size());
  for (const auto& s : sentences) out.push_back(s.gold_tags);
  return out;
}

namespace {

struct RawSentence {
  std::vector<std::string> words;
  std::vector<std::string> tags;
};

Corpus finalize(std::vector<RawSentence>&& raw, bool tagged, const LoadOptions& options) {
  Corpus corpus;
  std::shared_ptr<Vocabulary> built;
  if (options.vocab) {
    corpus.vocab = options.vocab;
  } else {
    built = std::make_shared<Vocabulary>();
    corpus.vocab = built;
  }
  if (tagged) corpus.gold_tagset = options.tagset ? options.tagset : std::make_shared<TagSet>();

  corpus.sentences.reserve(raw.size());
  for (auto& rs : raw) {
    Sentence s;
    s.words = std::move(rs.words);
    s.norm_words.reserve(s.words.size());
    s.word_ids.reserve(s.words.size());
    for (const auto& w : s.words) {
      s.norm_words.push_back(normalize_word(w));
      if (built) {
        WordId id = built->add(s.norm_words.back());
        built->increment(id);
        s.word_ids.push_back(id);
      } else {
        s.word_ids.push_back(corpus.vocab->lookup(s.norm_words.back()));
      }
    }
    if (tagged) {
      s.gold_tags.reserve(rs.tags.size());
      for (const auto& t : rs.tags) s.gold_tags.push_back(corpus.gold_tagset->add(t));
    }
    corpus.sentences.push_back(std::move(s));
  }
  return corpus;
}

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> cols;
  std::size_t start = 0;
  while (true) {
    auto tab = line.find('\t', start);
    cols.push_back(line.substr(start, tab == std::string_view::npos ? tab : tab - start));
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }
  return cols;
}

bool is_blank(std::string_view line) {
  return std::all_of(line.begin(), line.end(),
                     [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
}

std::ifstream open_or_throw(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open corpus file: " + path);
  return in;
}

bool parse_index(std::string_view text, long& value) {
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  return ec == std::errc() && ptr == text.data() + text.size();
}

}  // namespace

Corpus read_vertical(std::istream& in, const std::string& source_name, const LoadOptions& options) {
  std::vector<RawSentence> raw;
  RawSentence current;
  std::string line;
  std::size_t line_no = 0;
  auto flush = [&] {
    if (!current.words.empty()) raw.push_back(std::move(current));
    current = {};
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (is_blank(line)) {
      flush();
      continue;
    }
    auto cols = split_tabs(line);
    if (cols.size() > 2 || (options.has_tags && cols.size() != 2)) {
      throw ParseError(source_name, line_no,
                       "expected " + std::string(options.has_tags ? "2" : "1 or 2") +
                           " tab-separated columns, found " + std::to_string(cols.size()));
    }
    if (cols[0].empty()) throw ParseError(source_name, line_no, "empty word");
    current.words.emplace_back(cols[0]);
    if (options.has_tags) {
      if (cols[1].empty()) throw ParseError(source_name, line_no, "empty tag");
      current.tags.emplace_back(cols[1]);
    }
  }
  flush();
  if (raw.empty() && !options.allow_empty) throw FormatError(source_name + ": corpus is empty");
  return finalize(std::move(raw), options.has_tags, options);
}

Corpus load_vertical(const std::string& path, const LoadOptions& options) {
  auto in = open_or_throw(path);
  return read_vertical(in, path, options);
}

Corpus read_conllu(std::istream& in, const std::string& source_name, const LoadOptions& options) {
  std::vector<RawSentence> raw;
  RawSentence current;
  std::string line;
  std::size_t line_no = 0;
  auto flush = [&] {
    if (!current.words.empty()) raw.push_back(std::move(current));
    current = {};
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (is_blank(line)) {
      flush();
      continue;
    }
    if (line[0] == '#') continue;
    auto cols = split_tabs(line);
    if (cols.size() != 10) {
      throw ParseError(source_name, line_no,
                       "expected 10 columns, found " + std::to_string(cols.size()));
    }
    std::string_view id = cols[0];
    long value = 0;
    auto dash = id.find('-');
    auto dot = id.find('.');
    if (dash != std::string_view::npos) {
      long hi = 0;
      if (!parse_index(id.substr(0, dash), value) || !parse_index(id.substr(dash + 1), hi)) {
        throw ParseError(source_name, line_no, "bad multiword range id '" + std::string(id) + "'");
      }
      continue;
    }
    if (dot != std::string_view::npos) {
      long sub = 0;
      if (!parse_index(id.substr(0, dot), value) || !parse_index(id.substr(dot + 1), sub)) {
        throw ParseError(source_name, line_no, "bad empty-node id '" + std::string(id) + "'");
      }
      continue;
    }
    if (!parse_index(id, value) || value < 1) {
      throw ParseError(source_name, line_no, "non-integer token id '" + std::string(id) + "'");
    }
    if (cols[1].empty()) throw ParseError(source_name, line_no, "empty FORM");
    current.words.emplace_back(cols[1]);
    if (options.has_tags) current.tags.emplace_back(cols[3]);
  }
  flush();
  if (raw.empty() && !options.allow_empty) throw FormatError(source_name + ": corpus is empty");
  return finalize(std::move(raw), options.has_tags, options);
}

Corpus load_conllu(const std::string& path, const LoadOptions& options) {
  auto in = open_or_throw(path);
  return read_conllu(in, path, options);
}

void write_vertical(std::ostream& out, const Corpus& corpus,
                    const std::vector<std::vector<TagId>>* tags) {
  for (std::size_t s = 0; s < corpus.sentences.size(); ++s) {
    const auto& sent = corpus.sentences[s];
    for (std::size_t i = 0; i < sent.size(); ++i) {
      out << sent.words[i];
      if (tags) {
        out << '\t' << (*tags)[s][i];
      } else if (corpus.has_tags()) {
        out << '\t' << corpus.gold_tagset->name(sent.gold_tags[i]);
      }
      out << '\n';
    }
    out << '\n';
  }
}

Corpus make_corpus(const std::vector<std::vector<std::string>>& words,
                   const std::vector<std::vector<std::string>>* tags,
                   const LoadOptions& options) {
  std::vector<RawSentence> raw;
  raw.reserve(words.size());
  for (std::size_t s = 0; s < words.size(); ++s) {
    if (words[s].empty()) continue;
    RawSentence rs;
    rs.words = words[s];
    if (tags) {
      if ((*tags)[s].size() != words[s].size()) {
        throw MismatchError("sentence " + std::to_string(s) + ": word/tag count mismatch");
      }
      rs.tags = (*tags)[s];
    }
    raw.push_back(std::move(rs));
  }
  return finalize(std::move(raw), tags != nullptr, options);
}

}  // namespace crfae
