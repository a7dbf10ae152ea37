#pragma once

#include <cstdint>
#include <fstream>
#include <iosfwd>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "crfae/corpus.hpp"
#include "crfae/tensor.hpp"

namespace crfae {

/// K x n x d contextual vectors for one sentence, layer-major then token-major.
struct SentenceEmbedding {
  std::uint32_t layers = 0;
  std::uint32_t tokens = 0;
  std::uint32_t dim = 0;
  std::vector<float> values;

  float at(std::size_t layer, std::size_t token, std::size_t j) const {
    return values[(layer * tokens + token) * dim + j];
  }
  float& at(std::size_t layer, std::size_t token, std::size_t j) {
    return values[(layer * tokens + token) * dim + j];
  }
  /// One layer as an n x d double matrix.
  Matrix layer(std::size_t k) const;
};

struct EmbeddingHeader {
  std::uint32_t version = 1;
  std::uint32_t layers = 0;
  std::uint32_t dim = 0;
  std::uint32_t num_sentences = 0;
};

/// Random access to per-sentence embeddings.
class EmbeddingSource {
 public:
  virtual ~EmbeddingSource() = default;
  virtual std::size_t size() const = 0;
  virtual std::uint32_t layers() const = 0;
  virtual std::uint32_t dim() const = 0;
  virtual std::size_t tokens(std::size_t sentence) const = 0;
  virtual SentenceEmbedding get(std::size_t sentence) const = 0;
};

class InMemoryEmbeddings : public EmbeddingSource {
 public:
  InMemoryEmbeddings(std::uint32_t layers, std::uint32_t dim) : layers_(layers), dim_(dim) {}

  void push_back(SentenceEmbedding e);
  std::size_t size() const override { return blocks_.size(); }
  std::uint32_t layers() const override { return layers_; }
  std::uint32_t dim() const override { return dim_; }
  std::size_t tokens(std::size_t s) const override { return blocks_[s].tokens; }
  SentenceEmbedding get(std::size_t s) const override { return blocks_[s]; }
  const SentenceEmbedding& operator[](std::size_t s) const { return blocks_[s]; }

 private:
  std::uint32_t layers_;
  std::uint32_t dim_;
  std::vector<SentenceEmbedding> blocks_;
};

/// CWE1 reader. Opening scans block offsets only; vectors are read on demand,
/// either sequentially through `next()` or by index through `get()`.
class EmbeddingFile : public EmbeddingSource {
 public:
  explicit EmbeddingFile(const std::string& path);

  const EmbeddingHeader& header() const { return header_; }
  std::size_t size() const override { return offsets_.size(); }
  std::uint32_t layers() const override { return header_.layers; }
  std::uint32_t dim() const override { return header_.dim; }
  std::size_t tokens(std::size_t s) const override { return token_counts_[s]; }
  const std::vector<std::uint32_t>& token_counts() const { return token_counts_; }
  SentenceEmbedding get(std::size_t s) const override;

  /// Sequential stream in file order; empty once all blocks were read.
  std::optional<SentenceEmbedding> next();
  void rewind() { cursor_ = 0; }

 private:
  std::string path_;
  EmbeddingHeader header_;
  std::vector<std::uint64_t> offsets_;
  std::vector<std::uint32_t> token_counts_;
  std::size_t cursor_ = 0;
  mutable std::ifstream in_;
  mutable std::mutex mutex_;
};

/// Writes the little-endian CWE1 format: magic, version, K, d, count, then
/// per sentence `u32 n` and K*n*d binary32 values.
void write_embeddings(std::ostream& out, const EmbeddingSource& source);
void write_embeddings(const std::string& path, const EmbeddingSource& source);

/// Checks the sentence count and per-sentence token counts against a corpus.
void check_alignment(const EmbeddingSource& source, const Corpus& corpus);

/// Softmax of the layer logits.
Vector scalar_mix_weights(const Vector& logits);

/// gamma * sum_k softmax(logits)_k * layers[k].
Matrix scalar_mix(std::span<const Matrix> layers, const Vector& logits, double gamma);

/// Subtracts the previous token's forward half and the next token's backward
/// half; missing neighbours are zero. Requires an even width.
Matrix minus_op(const Matrix& r);
/// Adjoint of `minus_op`.
Matrix minus_op_backward(const Matrix& grad_m);

/// Deterministic pseudo-contextual vectors in [-1, 1]: the forward half
/// mixes the word with its left neighbour, the backward half with its right
/// neighbour; layer 2 adds seeded context noise to layer 1. A word's vector
/// averages hashes of its form and its character trigrams.
InMemoryEmbeddings synth_embed(const Corpus& corpus, std::uint32_t dim, std::uint64_t seed);

}  // namespace crfae
