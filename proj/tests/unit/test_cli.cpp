#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "crfae-pos");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = crfae::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

class Workdir {
 public:
  explicit Workdir(const std::string& name) : dir_(fs::temp_directory_path() / ("crfae_cli_" + name)) {
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  std::string operator()(const std::string& file) const { return (dir_ / file).string(); }

 private:
  fs::path dir_;
};

void write(const std::string& path, const std::string& text) { std::ofstream(path, std::ios::binary) << text; }

// Small synthetic corpus plus a config that keeps training short.
void prepare(const Workdir& w) {
  REQUIRE(run({"synth-corpus", "--out", w("s"), "--seed", "3", "--train", "60", "--dev", "20", "--test", "20"}).code == 0);
  write(w("c.cfg"), "tags = 5\nmax_epochs = 2\npretrain_epochs = 1\nbatch_words = 200\ncutoff = 2\n");
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("synthetic generators are deterministic") {
    Workdir a("gen_a"), b("gen_b");
    prepare(a);
    prepare(b);
    CHECK(slurp(a("s.train.txt")) == slurp(b("s.train.txt")));
    CHECK(slurp(a("s.dev.txt")) == slurp(b("s.dev.txt")));
    CHECK_FALSE(slurp(a("s.train.txt")).empty());
    for (const Workdir* w : {&a, &b}) {
      REQUIRE(run({"synth-embed", "--corpus", (*w)("s.train.txt"), "--dim", "8", "--seed", "1", "--out", (*w)("e.cwe")}).code == 0);
    }
    CHECK(slurp(a("e.cwe")) == slurp(b("e.cwe")));
  }

  TEST_CASE("train a feature HMM without embeddings, then tag and evaluate") {
    Workdir w("fhmm");
    prepare(w);
    auto r = run({"train", "--config", w("c.cfg"), "--corpus", w("s.train.txt"), "--dev", w("s.dev.txt"), "--stage", "fhmm",
                  "--out", w("m.ckpt")});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("model=fhmm") != std::string::npos);
    CHECK(fs::exists(w("m.ckpt")));

    auto t = run({"tag", "--model", w("m.ckpt"), "--corpus", w("s.dev.txt"), "--out", w("dev.pred")});
    REQUIRE(t.code == 0);
    auto e = run({"evaluate", "--gold", w("s.dev.txt"), "--pred", w("dev.pred")});
    REQUIRE(e.code == 0);
    CHECK(e.out.find("dev.m1") != std::string::npos);
    CHECK(e.out.find("dev.vm") != std::string::npos);
  }

  TEST_CASE("full pipeline with embeddings and the autoencoder tagger") {
    Workdir w("crfae");
    prepare(w);
    for (const char* split : {"train", "dev"}) {
      REQUIRE(run({"synth-embed", "--corpus", w(std::string("s.") + split + ".txt"), "--dim", "8", "--out",
                   w(std::string(split) + ".cwe")})
                  .code == 0);
    }
    auto r = run({"train", "--config", w("c.cfg"), "--corpus", w("s.train.txt"), "--dev", w("s.dev.txt"), "--emb",
                  w("train.cwe"), "--dev-emb", w("dev.cwe"), "--out", w("m.ckpt")});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("model=crfae") != std::string::npos);

    auto t = run({"tag", "--model", w("m.ckpt"), "--corpus", w("s.dev.txt"), "--emb", w("dev.cwe")});
    REQUIRE(t.code == 0);
    CHECK_FALSE(t.out.empty());

    // Embeddings of a different corpus do not line up.
    auto bad = run({"tag", "--model", w("m.ckpt"), "--corpus", w("s.dev.txt"), "--emb", w("train.cwe")});
    CHECK(bad.code == 2);

    auto fp = run({"tag", "--model", w("m.ckpt"), "--corpus", w("s.dev.txt"), "--emb", w("dev.cwe"), "--tags", "7"});
    CHECK(fp.code == 2);
    CHECK(fp.err.find("tags") != std::string::npos);
    auto warn = run({"tag", "--model", w("m.ckpt"), "--corpus", w("s.dev.txt"), "--emb", w("dev.cwe"), "--tags", "7",
                     "--allow-fingerprint-mismatch"});
    CHECK(warn.code == 0);
    CHECK_FALSE(warn.err.empty());
  }

  TEST_CASE("input errors exit with status 2") {
    Workdir w("errors");
    prepare(w);
    auto missing = run({"train", "--config", w("c.cfg"), "--corpus", w("s.train.txt"), "--emb", w("nope.cwe"), "--out",
                        w("m.ckpt")});
    CHECK(missing.code == 2);
    CHECK(missing.err.find(w("nope.cwe")) != std::string::npos);
    CHECK_FALSE(fs::exists(w("m.ckpt")));

    CHECK(run({"train", "--bogus"}).code == 2);
    CHECK(run({}).code == 2);

    write(w("bad.cfg"), "no_such_key = 1\n");
    CHECK(run({"train", "--config", w("bad.cfg"), "--corpus", w("s.train.txt"), "--out", w("m.ckpt")}).code == 2);
  }

  TEST_CASE("tagging an empty corpus writes nothing") {
    Workdir w("empty");
    prepare(w);
    REQUIRE(run({"train", "--config", w("c.cfg"), "--corpus", w("s.train.txt"), "--stage", "hmm", "--out", w("m.ckpt")})
                .code == 0);
    write(w("empty.txt"), "");
    auto t = run({"tag", "--model", w("m.ckpt"), "--corpus", w("empty.txt")});
    CHECK(t.code == 0);
    CHECK(t.out.empty());
  }
}
