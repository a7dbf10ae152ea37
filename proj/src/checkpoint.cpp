#include "crfae/checkpoint.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace crfae {
namespace {

constexpr std::string_view kMagic = "CRFAE-CKPT";

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double parse_double(std::string_view s, const std::string& where) {
  double x = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(x)) {
    throw FormatError(where + ": bad number '" + std::string(s) + "'");
  }
  return x;
}

long parse_long(std::string_view s, const std::string& where) {
  long x = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw FormatError(where + ": bad integer '" + std::string(s) + "'");
  }
  return x;
}

std::vector<std::string_view> split_spaces(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && line[i] == ' ') ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

bool valid_fingerprint_text(std::string_view s) {
  for (char c : s) {
    if (c == ';' || c == '=' || c == ' ' || c == '\t' || c == '\n' || c == '\r') return false;
  }
  return true;
}

}  // namespace

std::string format_fingerprint(const Fingerprint& fp) {
  if (fp.empty()) return "-";
  std::string out;
  for (const auto& [key, value] : fp) {
    if (key.empty() || !valid_fingerprint_text(key) || !valid_fingerprint_text(value)) {
      throw std::invalid_argument("fingerprint entry '" + key + "=" + value + "' contains reserved characters");
    }
    if (!out.empty()) out += ';';
    out += key + "=" + value;
  }
  return out;
}

Fingerprint parse_fingerprint(std::string_view text) {
  Fingerprint fp;
  if (text == "-" || text.empty()) return fp;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(';', start);
    if (end == std::string_view::npos) end = text.size();
    auto item = text.substr(start, end - start);
    auto eq = item.find('=');
    if (eq == std::string_view::npos || eq == 0) {
      throw FormatError("malformed fingerprint entry '" + std::string(item) + "'");
    }
    fp[std::string(item.substr(0, eq))] = std::string(item.substr(eq + 1));
    start = end + 1;
  }
  return fp;
}

std::vector<std::string> fingerprint_differences(const Fingerprint& expected, const Fingerprint& actual) {
  std::vector<std::string> keys;
  for (const auto& [key, value] : expected) {
    auto it = actual.find(key);
    if (it == actual.end() || it->second != value) keys.push_back(key);
  }
  return keys;
}

bool Checkpoint::has(const std::string& name) const {
  for (const auto& t : tensors) {
    if (t.first == name) return true;
  }
  return false;
}

const Matrix& Checkpoint::tensor(const std::string& name) const {
  for (const auto& t : tensors) {
    if (t.first == name) return t.second;
  }
  throw FormatError("checkpoint has no tensor '" + name + "'");
}

void write_checkpoint(std::ostream& out, const Checkpoint& ckpt) {
  out << kMagic << ' ' << Checkpoint::kVersion << ' ' << format_fingerprint(ckpt.fingerprint) << ' '
      << ckpt.epoch << ' ' << format_double(ckpt.log_likelihood) << '\n';
  for (const auto& [name, m] : ckpt.tensors) {
    out << name << ' ' << m.rows() << ',' << m.cols();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      for (Eigen::Index c = 0; c < m.cols(); ++c) out << ' ' << format_double(m(r, c));
    }
    out << '\n';
  }
}

void save_checkpoint(const std::string& path, const Checkpoint& ckpt) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write checkpoint " + path);
  write_checkpoint(out, ckpt);
  out.flush();
  if (!out) throw InputError("error writing checkpoint " + path);
}

Checkpoint read_checkpoint(std::istream& in, const std::string& source_name) {
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (text.empty()) throw FormatError(source_name + ": empty checkpoint");
  if (text.back() != '\n') throw FormatError(source_name + ": truncated checkpoint (no final newline)");

  Checkpoint ckpt;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    std::string_view line(text.data() + pos, end - pos);
    pos = end + 1;
    ++line_no;
    const std::string where = source_name + ":" + std::to_string(line_no);
    auto fields = split_spaces(line);
    if (line_no == 1) {
      if (fields.size() != 5 || fields[0] != kMagic) throw FormatError(where + ": not a checkpoint header");
      long version = parse_long(fields[1], where);
      if (version != Checkpoint::kVersion) {
        throw FormatError(where + ": unsupported checkpoint version " + std::to_string(version));
      }
      ckpt.fingerprint = parse_fingerprint(fields[2]);
      ckpt.epoch = static_cast<int>(parse_long(fields[3], where));
      ckpt.log_likelihood = parse_double(fields[4], where);
      continue;
    }
    if (fields.empty()) throw FormatError(where + ": blank line");
    if (fields.size() < 2) throw FormatError(where + ": missing tensor shape");
    auto shape = fields[1];
    auto comma = shape.find(',');
    long rows = 1;
    long cols = 0;
    if (comma == std::string_view::npos) {
      cols = parse_long(shape, where);
    } else {
      rows = parse_long(shape.substr(0, comma), where);
      cols = parse_long(shape.substr(comma + 1), where);
    }
    if (rows < 0 || cols < 0) throw FormatError(where + ": negative shape");
    const auto expected = static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
    if (fields.size() - 2 != expected) {
      throw FormatError(where + ": tensor '" + std::string(fields[0]) + "' expects " + std::to_string(expected) +
                        " values, found " + std::to_string(fields.size() - 2));
    }
    Matrix m(rows, cols);
    for (std::size_t i = 0; i < expected; ++i) m.data()[i] = parse_double(fields[i + 2], where);
    ckpt.tensors.emplace_back(std::string(fields[0]), std::move(m));
  }
  if (line_no == 0) throw FormatError(source_name + ": empty checkpoint");
  return ckpt;
}

Checkpoint load_checkpoint(const std::string& path, const Fingerprint* expected, bool allow_mismatch,
                           std::ostream* warnings) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open checkpoint " + path);
  Checkpoint ckpt = read_checkpoint(in, path);
  if (expected) {
    auto keys = fingerprint_differences(*expected, ckpt.fingerprint);
    if (!keys.empty()) {
      std::string msg = path + ": configuration differs from the checkpoint in:";
      for (const auto& k : keys) {
        auto it = ckpt.fingerprint.find(k);
        msg += " " + k + " (expected " + expected->at(k) + ", stored " +
               (it == ckpt.fingerprint.end() ? std::string("<absent>") : it->second) + ")";
      }
      if (!allow_mismatch) throw FingerprintError(msg, keys);
      if (warnings) *warnings << "warning: " << msg << "\n";
    }
  }
  return ckpt;
}

}  // namespace crfae
