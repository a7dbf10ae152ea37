// Serial reference vs OpenMP paths of the two hot kernels.
#include <benchmark/benchmark.h>

#include <algorithm>
#include <numeric>
#include <omp.h>

#include "crfae/crfae.hpp"
#include "crfae/embeddings.hpp"
#include "crfae/features.hpp"
#include "crfae/fhmm.hpp"
#include "crfae/synthetic.hpp"

using namespace crfae;

namespace {

struct Setup {
  SyntheticData data;
  std::unique_ptr<Featurizer> featurizer;
  InMemoryEmbeddings emb{2, 64};
  Matrix theta;
  CrfAeParams params;
  std::vector<std::size_t> batch;

  Setup() {
    SyntheticConfig sc;
    sc.tags = 12;
    sc.words_per_tag = 1000;
    sc.train_sentences = 4000;
    sc.seed = 1;
    data = generate_synthetic(sc);
    FeatureConfig fc;
    fc.cutoff = 2;
    featurizer = std::make_unique<Featurizer>(data.train.vocab, build_feature_index(data.train, fc), fc);
    emb = synth_embed(data.train, 64, 1);
    theta = Matrix::Random(45, static_cast<Eigen::Index>(featurizer->num_features())) * 0.1;
    params = CrfAeParams::init(2, 64, 64, 45, featurizer->num_features(), 1);
    params.theta = theta;
    batch.resize(400);
    std::iota(batch.begin(), batch.end(), std::size_t{0});
  }
};

Setup& setup() {
  static Setup s;
  return s;
}

void BM_EmissionTableReference(benchmark::State& state) {
  auto& s = setup();
  for (auto _ : state) benchmark::DoNotOptimize(fhmm_emission_table_reference(s.theta, s.featurizer->vocab_features()));
}

void BM_EmissionTable(benchmark::State& state) {
  auto& s = setup();
  const int jobs = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(fhmm_emission_table(s.theta, s.featurizer->vocab_features(), jobs));
}

void BM_CrfAeLossAndGradient(benchmark::State& state) {
  auto& s = setup();
  CrfAeOptions opt;
  opt.jobs = static_cast<int>(state.range(0));
  opt.train = true;
  for (auto _ : state) {
    CrfAeParams grad = s.params;
    benchmark::DoNotOptimize(
        crfae_loss(s.params, EncoderConfig{}, s.data.train, s.emb, s.batch, *s.featurizer, &grad, opt));
  }
}

void Jobs(benchmark::internal::Benchmark* b) {
  const int max = std::max(omp_get_max_threads(), 4);
  for (int j = 1; j < max; j *= 2) b->Arg(j);
  b->Arg(max);
}

}  // namespace

BENCHMARK(BM_EmissionTableReference)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EmissionTable)->Apply(Jobs)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CrfAeLossAndGradient)->Apply(Jobs)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
