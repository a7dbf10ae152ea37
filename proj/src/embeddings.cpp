#include "crfae/embeddings.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <ostream>
#include <string>
#include <unordered_map>

#include "crfae/error.hpp"
#include "crfae/hash.hpp"

namespace crfae {
namespace {

constexpr char kMagic[4] = {'C', 'W', 'E', '1'};

void put_u32(std::ostream& out, std::uint32_t v) {
  char bytes[4] = {static_cast<char>(v & 0xFF), static_cast<char>((v >> 8) & 0xFF),
                   static_cast<char>((v >> 16) & 0xFF), static_cast<char>((v >> 24) & 0xFF)};
  out.write(bytes, 4);
}

std::uint32_t get_u32(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

bool read_u32(std::istream& in, std::uint32_t& v) {
  unsigned char bytes[4];
  if (!in.read(reinterpret_cast<char*>(bytes), 4)) return false;
  v = get_u32(bytes);
  return true;
}

}  // namespace

Matrix SentenceEmbedding::layer(std::size_t k) const {
  Matrix m(tokens, dim);
  for (std::size_t i = 0; i < tokens; ++i) {
    for (std::size_t j = 0; j < dim; ++j) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = at(k, i, j);
  }
  return m;
}

void InMemoryEmbeddings::push_back(SentenceEmbedding e) {
  if (e.layers != layers_ || e.dim != dim_) throw MismatchError("embedding block shape mismatch");
  blocks_.push_back(std::move(e));
}

EmbeddingFile::EmbeddingFile(const std::string& path) : path_(path), in_(path, std::ios::binary) {
  if (!in_) throw InputError("cannot open embedding file: " + path);
  in_.seekg(0, std::ios::end);
  const auto file_size = static_cast<std::uint64_t>(in_.tellg());
  in_.seekg(0);

  char magic[4];
  if (!in_.read(magic, 4) || std::memcmp(magic, kMagic, 4) != 0) {
    throw FormatError(path + ": bad magic (expected CWE1)");
  }
  if (!read_u32(in_, header_.version) || !read_u32(in_, header_.layers) ||
      !read_u32(in_, header_.dim) || !read_u32(in_, header_.num_sentences)) {
    throw FormatError(path + ": truncated header");
  }
  if (header_.version != 1) {
    throw FormatError(path + ": unsupported version " + std::to_string(header_.version));
  }
  if (header_.layers == 0) throw FormatError(path + ": zero layers");
  if (header_.dim == 0 || header_.dim % 2 != 0) {
    throw FormatError(path + ": dimension must be positive and even, got " + std::to_string(header_.dim));
  }

  std::uint64_t pos = 20;
  offsets_.reserve(header_.num_sentences);
  token_counts_.reserve(header_.num_sentences);
  for (std::uint32_t s = 0; s < header_.num_sentences; ++s) {
    std::uint32_t n = 0;
    in_.seekg(static_cast<std::streamoff>(pos));
    if (!read_u32(in_, n)) throw FormatError(path + ": truncated block header at sentence " + std::to_string(s));
    if (n == 0) throw FormatError(path + ": empty block at sentence " + std::to_string(s));
    std::uint64_t bytes = 4ull * header_.layers * n * header_.dim;
    if (pos + 4 + bytes > file_size) {
      throw FormatError(path + ": truncated block at sentence " + std::to_string(s));
    }
    offsets_.push_back(pos);
    token_counts_.push_back(n);
    pos += 4 + bytes;
  }
  if (pos != file_size) throw FormatError(path + ": trailing bytes after last block");
}

SentenceEmbedding EmbeddingFile::get(std::size_t s) const {
  if (s >= offsets_.size()) throw std::out_of_range("embedding sentence index out of range");
  SentenceEmbedding e;
  e.layers = header_.layers;
  e.tokens = token_counts_[s];
  e.dim = header_.dim;
  std::size_t count = static_cast<std::size_t>(e.layers) * e.tokens * e.dim;
  std::vector<unsigned char> raw(count * 4);
  {
    std::lock_guard lock(mutex_);
    in_.clear();
    in_.seekg(static_cast<std::streamoff>(offsets_[s] + 4));
    if (!in_.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()))) {
      throw FormatError(path_ + ": truncated block at sentence " + std::to_string(s));
    }
  }
  e.values.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    float v = std::bit_cast<float>(get_u32(raw.data() + 4 * i));
    if (!std::isfinite(v)) {
      throw FormatError(path_ + ": non-finite value in sentence " + std::to_string(s));
    }
    e.values[i] = v;
  }
  return e;
}

std::optional<SentenceEmbedding> EmbeddingFile::next() {
  if (cursor_ >= offsets_.size()) return std::nullopt;
  return get(cursor_++);
}

void write_embeddings(std::ostream& out, const EmbeddingSource& source) {
  if (source.layers() == 0) throw FormatError("cannot write an embedding file with zero layers");
  if (source.dim() == 0 || source.dim() % 2 != 0) throw FormatError("embedding dimension must be even");
  out.write(kMagic, 4);
  put_u32(out, 1);
  put_u32(out, source.layers());
  put_u32(out, source.dim());
  put_u32(out, static_cast<std::uint32_t>(source.size()));
  for (std::size_t s = 0; s < source.size(); ++s) {
    auto e = source.get(s);
    put_u32(out, e.tokens);
    for (float v : e.values) put_u32(out, std::bit_cast<std::uint32_t>(v));
  }
  if (!out) throw std::runtime_error("failed writing embedding stream");
}

void write_embeddings(const std::string& path, const EmbeddingSource& source) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write embedding file: " + path);
  write_embeddings(out, source);
}

void check_alignment(const EmbeddingSource& source, const Corpus& corpus) {
  if (source.size() != corpus.size()) {
    throw MismatchError("embedding file has " + std::to_string(source.size()) +
                        " sentences, corpus has " + std::to_string(corpus.size()));
  }
  for (std::size_t s = 0; s < corpus.size(); ++s) {
    if (source.tokens(s) != corpus.sentences[s].size()) {
      throw MismatchError("sentence " + std::to_string(s) + ": embedding has " +
                          std::to_string(source.tokens(s)) + " tokens, corpus has " +
                          std::to_string(corpus.sentences[s].size()));
    }
  }
}

Vector scalar_mix_weights(const Vector& logits) {
  Vector w = (logits.array() - logits.maxCoeff()).exp();
  return w / w.sum();
}

Matrix scalar_mix(std::span<const Matrix> layers, const Vector& logits, double gamma) {
  if (layers.empty() || static_cast<Eigen::Index>(layers.size()) != logits.size()) {
    throw MismatchError("scalar mix: " + std::to_string(layers.size()) + " layers but " +
                        std::to_string(logits.size()) + " weights");
  }
  Vector w = scalar_mix_weights(logits);
  Matrix r = Matrix::Zero(layers[0].rows(), layers[0].cols());
  for (std::size_t k = 0; k < layers.size(); ++k) {
    if (layers[k].rows() != r.rows() || layers[k].cols() != r.cols()) {
      throw MismatchError("scalar mix: layer shapes differ");
    }
    r += w(static_cast<Eigen::Index>(k)) * layers[k];
  }
  return gamma * r;
}

Matrix minus_op(const Matrix& r) {
  if (r.cols() % 2 != 0) throw MismatchError("minus operation needs an even width");
  const Eigen::Index n = r.rows();
  const Eigen::Index half = r.cols() / 2;
  Matrix m = r;
  if (n > 1) {
    m.block(1, 0, n - 1, half) -= r.block(0, 0, n - 1, half);
    m.block(0, half, n - 1, half) -= r.block(1, half, n - 1, half);
  }
  return m;
}

Matrix minus_op_backward(const Matrix& grad_m) {
  const Eigen::Index n = grad_m.rows();
  const Eigen::Index half = grad_m.cols() / 2;
  Matrix g = grad_m;
  if (n > 1) {
    g.block(0, 0, n - 1, half) -= grad_m.block(1, 0, n - 1, half);
    g.block(1, half, n - 1, half) -= grad_m.block(0, half, n - 1, half);
  }
  return g;
}

namespace {

/// Hashed type vector: the mean of seeded hash vectors of the whole form and
/// of its byte trigrams (with boundary markers), so forms sharing an ending
/// share part of their vector.
std::vector<double> type_vector(std::uint64_t seed, std::uint64_t salt, const std::string& form, std::uint32_t width) {
  std::vector<std::uint64_t> keys = {hash_string(form)};
  const std::string marked = "<" + form + ">";
  for (std::size_t i = 0; i + 3 <= marked.size(); ++i) keys.push_back(hash_combine(3, hash_string(marked.substr(i, 3))));
  std::vector<double> v(width, 0.0);
  for (std::uint32_t j = 0; j < width; ++j) {
    for (auto k : keys) v[j] += unit_hash(seed, salt, k, j);
    v[j] /= static_cast<double>(keys.size());
  }
  return v;
}

}  // namespace

InMemoryEmbeddings synth_embed(const Corpus& corpus, std::uint32_t dim, std::uint64_t seed) {
  if (dim == 0 || dim % 2 != 0) {
    throw InputError("synthetic embedding dimension must be even, got " + std::to_string(dim));
  }
  constexpr std::uint32_t kLayers = 2;
  constexpr std::uint64_t kForward = 1, kBackward = 2, kNoise = 3;
  const std::uint32_t half = dim / 2;

  // Per direction: form -> hashed type vector. Sentence boundaries use
  // reserved forms that no token can produce.
  std::unordered_map<std::string, std::vector<double>> cache[2];
  auto lookup = [&](int dir, const std::string& form) -> const std::vector<double>& {
    auto it = cache[dir].find(form);
    if (it == cache[dir].end()) {
      it = cache[dir].emplace(form, type_vector(seed, dir == 0 ? kForward : kBackward, form, half)).first;
    }
    return it->second;
  };
  const std::string bos = std::string("\x01<s>"), eos = std::string("\x01</s>");

  InMemoryEmbeddings out(kLayers, dim);
  for (const auto& s : corpus.sentences) {
    const auto n = static_cast<std::uint32_t>(s.size());
    SentenceEmbedding e;
    e.layers = kLayers;
    e.tokens = n;
    e.dim = dim;
    e.values.assign(static_cast<std::size_t>(kLayers) * n * dim, 0.0f);
    for (std::uint32_t i = 0; i < n; ++i) {
      const std::string& self = s.norm_words[i];
      const std::string& left = i > 0 ? s.norm_words[i - 1] : bos;
      const std::string& right = i + 1 < n ? s.norm_words[i + 1] : eos;
      const auto& fs = lookup(0, self);
      const auto& fl = lookup(0, left);
      const auto& bs = lookup(1, self);
      const auto& br = lookup(1, right);
      const std::uint64_t context = hash_combine(hash_combine(hash_string(left), hash_string(self)), hash_string(right));
      for (std::uint32_t j = 0; j < dim; ++j) {
        const double v = j < half ? (fs[j] + 0.5 * fl[j]) / 1.5 : (bs[j - half] + 0.5 * br[j - half]) / 1.5;
        e.at(0, i, j) = static_cast<float>(v);
        const double noisy = std::clamp(v + 0.1 * unit_hash(seed, kNoise, context, j), -1.0, 1.0);
        e.at(1, i, j) = static_cast<float>(noisy);
      }
    }
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace crfae
