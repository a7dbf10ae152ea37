#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "crfae/error.hpp"
#include "crfae/params.hpp"

namespace crfae {

/// Flat configuration description. Serialized as sorted `key=value` pairs
/// joined by ';' so it fits in one whitespace-free header field.
using Fingerprint = std::map<std::string, std::string>;

std::string format_fingerprint(const Fingerprint& fp);
Fingerprint parse_fingerprint(std::string_view text);

/// Keys of `expected` whose value is missing or different in `actual`.
std::vector<std::string> fingerprint_differences(const Fingerprint& expected, const Fingerprint& actual);

class FingerprintError : public MismatchError {
 public:
  FingerprintError(const std::string& what, std::vector<std::string> keys)
      : MismatchError(what), keys_(std::move(keys)) {}
  const std::vector<std::string>& keys() const { return keys_; }

 private:
  std::vector<std::string> keys_;
};

struct Checkpoint {
  static constexpr int kVersion = 1;

  Fingerprint fingerprint;
  int epoch = 0;
  double log_likelihood = 0.0;
  std::vector<std::pair<std::string, Matrix>> tensors;

  bool has(const std::string& name) const;
  /// Throws FormatError when absent.
  const Matrix& tensor(const std::string& name) const;

  template <class P>
  void store(const P& params) {
    for (const auto& t : params.tensors()) tensors.emplace_back(t.name, *t.value);
  }

  /// Copies every tensor of `params` from the checkpoint.
  template <class P>
  void restore(P& params) const {
    for (auto& t : params.tensors()) *t.value = tensor(t.name);
  }
};

/// Header `CRFAE-CKPT 1 <fingerprint> <epoch> <LL>`, then one line per tensor:
/// `name rows,cols v1 v2 ...` in row-major order with 17 significant digits.
void write_checkpoint(std::ostream& out, const Checkpoint& ckpt);
void save_checkpoint(const std::string& path, const Checkpoint& ckpt);

Checkpoint read_checkpoint(std::istream& in, const std::string& source_name);

/// Loads and, when `expected` is given, compares its keys against the stored
/// fingerprint. Differences raise FingerprintError naming the keys unless
/// `allow_mismatch`, in which case a warning goes to `warnings` (if any).
Checkpoint load_checkpoint(const std::string& path, const Fingerprint* expected = nullptr,
                           bool allow_mismatch = false, std::ostream* warnings = nullptr);

}  // namespace crfae
