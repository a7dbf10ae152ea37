#include "crfae/features.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <istream>
#include <stdexcept>
#include <ostream>

#include "crfae/error.hpp"
#include "crfae/unicode.hpp"

namespace crfae {
namespace {

constexpr std::array<std::string_view, kNumTemplates> kTemplateNames = {
    "Word", "Suf1", "Suf2", "Suf3", "HasDigit", "HasHyphen", "Cap", "IsPunct"};

constexpr std::string_view kYes = "✓";
constexpr std::string_view kNo = "✗";
constexpr std::string_view kUnkMarker = "#UNK";

std::string feature_string(Template t, std::string_view value) {
  std::string out(template_name(t));
  out += '=';
  out += value;
  return out;
}

std::string flag(Template t, bool on) { return feature_string(t, on ? kYes : kNo); }

std::string unk_string(Template t) { return std::string(template_name(t)) + std::string(kUnkMarker); }

/// Template of a feature string, from the name before '=' or '#'.
int template_of(std::string_view feature) {
  auto cut = feature.find_first_of("=#");
  auto name = feature.substr(0, cut);
  for (int t = 0; t < kNumTemplates; ++t) {
    if (kTemplateNames[static_cast<std::size_t>(t)] == name) return t;
  }
  return -1;
}

std::string join(std::span<const std::string_view> units, std::size_t from) {
  std::string out;
  for (std::size_t i = from; i < units.size(); ++i) out += units[i];
  return out;
}

bool all_punctuation(std::string_view word) {
  auto units = unicode::split_code_points(word);
  if (units.empty()) return false;
  return std::all_of(units.begin(), units.end(),
                     [](std::string_view u) { return unicode::is_punctuation(unicode::decode(u)); });
}

}  // namespace

std::string_view template_name(Template t) { return kTemplateNames[static_cast<std::size_t>(t)]; }

std::vector<Template> FeatureConfig::templates() const {
  std::vector<Template> out = {Template::kWord, Template::kSuf1, Template::kSuf2,
                               Template::kSuf3, Template::kHasDigit, Template::kHasHyphen};
  out.push_back(mode == FeatureMode::kWsj ? Template::kCapitalized : Template::kIsPunct);
  return out;
}

std::string FeatureConfig::fingerprint() const {
  return "mode=" + std::string(to_string(mode)) + ";language=" + language +
         ";cutoff=" + std::to_string(cutoff) +
         ";suffix_rules=" + (apply_language_suffix_rules ? "1" : "0");
}

FeatureMode parse_feature_mode(std::string_view text) {
  if (text == "wsj") return FeatureMode::kWsj;
  if (text == "ud") return FeatureMode::kUd;
  throw InputError("unknown feature mode '" + std::string(text) + "' (expected wsj or ud)");
}

std::string_view to_string(FeatureMode mode) { return mode == FeatureMode::kWsj ? "wsj" : "ud"; }

bool has_suffix_rules(std::string_view language) {
  return language == "de" || language == "en" || language == "es" || language == "fr" ||
         language == "it" || language == "pt-br";
}

int scaled_cutoff(std::size_t tokens, std::size_t reference_tokens, int base_cutoff) {
  if (reference_tokens == 0) return base_cutoff;
  auto scaled = static_cast<long double>(base_cutoff) * static_cast<long double>(tokens) /
                static_cast<long double>(reference_tokens);
  return static_cast<int>(scaled);
}

std::string strip_inflection(std::string_view norm_word, std::string_view language) {
  auto units = unicode::split_code_points(norm_word);
  std::size_t drop = 0;
  bool ends_with_s = !units.empty() && units.back() == "s";
  if (language == "it") {
    drop = 1;
  } else if (language == "de") {
    drop = 2;
  } else if (language == "fr" || language == "es" || language == "pt-br") {
    drop = ends_with_s ? 2 : 1;
  } else if (language == "en") {
    drop = ends_with_s ? 1 : 0;
  }
  if (drop == 0 || drop >= units.size()) return std::string(norm_word);
  std::string out;
  for (std::size_t i = 0; i + drop < units.size(); ++i) out += units[i];
  return out;
}

std::vector<std::string> extract_features(std::string_view raw_word, std::string_view norm_word,
                                          const FeatureConfig& config) {
  std::vector<std::string> out;
  const bool ud = config.mode == FeatureMode::kUd;
  const bool punct = ud && all_punctuation(norm_word);

  out.push_back(feature_string(Template::kWord, punct ? std::string_view("PUNCT") : norm_word));

  std::string stem(norm_word);
  if (config.apply_language_suffix_rules && has_suffix_rules(config.language)) {
    stem = strip_inflection(norm_word, config.language);
  }
  auto units = unicode::split_code_points(stem);
  constexpr Template kSuffixes[] = {Template::kSuf1, Template::kSuf2, Template::kSuf3};
  for (std::size_t n = 1; n <= 3; ++n) {
    if (units.size() < n) break;
    out.push_back(feature_string(kSuffixes[n - 1], join(units, units.size() - n)));
  }

  bool digit = norm_word.find_first_of("0123456789") != std::string_view::npos;
  out.push_back(flag(Template::kHasDigit, digit));
  out.push_back(flag(Template::kHasHyphen, norm_word.find('-') != std::string_view::npos));
  if (ud) {
    out.push_back(flag(Template::kIsPunct, punct));
  } else {
    auto raw_units = unicode::split_code_points(raw_word);
    bool cap = !raw_units.empty() && unicode::is_uppercase(unicode::decode(raw_units.front()));
    out.push_back(flag(Template::kCapitalized, cap));
  }
  return out;
}

FeatureId FeatureIndex::add(std::string feature, std::int64_t count) {
  auto id = static_cast<FeatureId>(features_.size());
  ids_.emplace(feature, id);
  features_.push_back(std::move(feature));
  counts_.push_back(count);
  return id;
}

FeatureId FeatureIndex::resolve(std::string_view feature) const {
  auto it = ids_.find(std::string(feature));
  if (it != ids_.end()) return it->second;
  int t = template_of(feature);
  if (t < 0) return -1;
  return unk_ids_[static_cast<std::size_t>(t)];
}

bool FeatureIndex::is_unk(FeatureId id) const {
  return std::find(unk_ids_.begin(), unk_ids_.end(), id) != unk_ids_.end();
}

std::size_t FeatureIndex::num_kept() const {
  auto unks = std::count_if(unk_ids_.begin(), unk_ids_.end(), [](FeatureId id) { return id >= 0; });
  return features_.size() - static_cast<std::size_t>(unks);
}

FeatureVector FeatureIndex::featurize(std::string_view raw_word, std::string_view norm_word,
                                      const FeatureConfig& config) const {
  FeatureVector fv;
  for (const auto& f : extract_features(raw_word, norm_word, config)) {
    FeatureId id = resolve(f);
    if (id >= 0) fv.ids.push_back(id);
  }
  std::sort(fv.ids.begin(), fv.ids.end());
  fv.ids.erase(std::unique(fv.ids.begin(), fv.ids.end()), fv.ids.end());
  return fv;
}

FeatureIndex build_feature_index(const Corpus& train, const FeatureConfig& config) {
  // Count by token, remembering first-occurrence order for stable ids.
  std::unordered_map<std::string, std::int64_t> counts;
  std::vector<std::string> order;
  for (const auto& s : train.sentences) {
    for (std::size_t i = 0; i < s.size(); ++i) {
      for (auto& f : extract_features(s.words[i], s.norm_words[i], config)) {
        auto [it, inserted] = counts.try_emplace(f, 0);
        if (inserted) order.push_back(f);
        ++it->second;
      }
    }
  }

  FeatureIndex index;
  index.fingerprint_ = config.fingerprint();
  for (Template t : config.templates()) {
    index.unk_ids_[static_cast<std::size_t>(t)] = index.add(unk_string(t), 0);
  }
  for (auto& f : order) {
    std::int64_t c = counts[f];
    if (c >= config.cutoff) {
      index.add(f, c);
    } else {
      auto unk = index.unk_ids_[static_cast<std::size_t>(template_of(f))];
      index.counts_[static_cast<std::size_t>(unk)] += c;
    }
  }
  return index;
}

void FeatureIndex::write(std::ostream& out) const {
  out << "#crfae-features " << fingerprint_ << '\n';
  for (std::size_t i = 0; i < features_.size(); ++i) {
    out << features_[i] << '\t' << i << '\t' << counts_[i] << '\n';
  }
}

FeatureIndex FeatureIndex::read(std::istream& in, const std::string& source_name) {
  FeatureIndex index;
  std::string line;
  if (!std::getline(in, line) || line.rfind("#crfae-features ", 0) != 0) {
    throw FormatError(source_name + ": missing feature-index header");
  }
  index.fingerprint_ = line.substr(std::string_view("#crfae-features ").size());
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto t2 = line.rfind('\t');
    auto t1 = t2 == std::string::npos || t2 == 0 ? std::string::npos : line.rfind('\t', t2 - 1);
    if (t1 == std::string::npos) throw ParseError(source_name, line_no, "expected 3 columns");
    long id = 0;
    std::int64_t count = 0;
    auto id_text = std::string_view(line).substr(t1 + 1, t2 - t1 - 1);
    auto count_text = std::string_view(line).substr(t2 + 1);
    auto r1 = std::from_chars(id_text.data(), id_text.data() + id_text.size(), id);
    auto r2 = std::from_chars(count_text.data(), count_text.data() + count_text.size(), count);
    if (r1.ec != std::errc() || r2.ec != std::errc() ||
        id != static_cast<long>(index.features_.size())) {
      throw ParseError(source_name, line_no, "ids must be dense and in order");
    }
    std::string feature = line.substr(0, t1);
    int t = template_of(feature);
    if (t < 0) throw ParseError(source_name, line_no, "unknown template in '" + feature + "'");
    FeatureId fid = index.add(feature, count);
    if (feature == unk_string(static_cast<Template>(t))) {
      index.unk_ids_[static_cast<std::size_t>(t)] = fid;
    }
  }
  return index;
}

FeatureIndex FeatureIndex::read(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open feature index: " + path);
  return read(in, path);
}

FeatureMatrix::FeatureMatrix(std::vector<FeatureVector> rows, std::size_t num_features)
    : num_features_(num_features) {
  offsets_.reserve(rows.size() + 1);
  offsets_.push_back(0);
  for (auto& r : rows) {
    ids_.insert(ids_.end(), r.ids.begin(), r.ids.end());
    offsets_.push_back(ids_.size());
  }
}

FeatureMatrix featurize_vocabulary(const Vocabulary& vocab, const FeatureIndex& index,
                                   const FeatureConfig& config) {
  std::vector<FeatureVector> rows;
  rows.reserve(vocab.size());
  // Digit normalization keeps case, so the normalized type stands in for the raw form.
  for (const auto& w : vocab.words()) rows.push_back(index.featurize(w, w, config));
  return FeatureMatrix(std::move(rows), index.size());
}

Featurizer::Featurizer(std::shared_ptr<const Vocabulary> vocab, FeatureIndex index,
                       FeatureConfig config)
    : vocab_(std::move(vocab)), index_(std::move(index)), config_(std::move(config)) {
  if (!vocab_) throw std::invalid_argument("featurizer needs a vocabulary");
  if (index_.fingerprint() != config_.fingerprint()) {
    throw MismatchError("feature index built with '" + index_.fingerprint() +
                        "' but configuration is '" + config_.fingerprint() + "'");
  }
  matrix_ = featurize_vocabulary(*vocab_, index_, config_);
}

FeatureVector Featurizer::token(const Sentence& sentence, std::size_t i) const {
  WordId id = sentence.word_ids[i];
  if (id >= 0 && static_cast<std::size_t>(id) < matrix_.rows()) {
    auto row = matrix_.row(static_cast<std::size_t>(id));
    return {std::vector<FeatureId>(row.begin(), row.end())};
  }
  return index_.featurize(sentence.words[i], sentence.norm_words[i], config_);
}

}  // namespace crfae
