#include <benchmark/benchmark.h>

#include "hcr/features.hpp"
#include "hcr/mlp.hpp"
#include "hcr/pipeline.hpp"
#include "hcr/synthetic.hpp"
#include "hcr/thinning.hpp"

namespace {

const hcr::Dataset& glyphs() {
  static const hcr::Dataset d = hcr::generate_synthetic(25, 2, 1);
  return d;
}

const std::vector<hcr::PreprocessStages>& stages() {
  static const auto s = [] {
    std::vector<hcr::PreprocessStages> out;
    for (const auto& sample : glyphs().samples) out.push_back(hcr::preprocess(sample.image));
    return out;
  }();
  return s;
}

void BM_Thin(benchmark::State& state) {
  const auto& st = stages();
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(hcr::thin(st[i].scaled));
    i = (i + 1) % st.size();
  }
}
BENCHMARK(BM_Thin);

void BM_Prune(benchmark::State& state) {
  const auto& st = stages();
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(hcr::prune(st[i].thinned));
    i = (i + 1) % st.size();
  }
}
BENCHMARK(BM_Prune);

void BM_Features(benchmark::State& state) {
  const auto& st = stages();
  hcr::FeatureConfig cfg;
  cfg.grid_n = static_cast<int>(state.range(0));
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(hcr::extract_features(st[i].pruned, st[i].scaled, cfg));
    i = (i + 1) % st.size();
  }
}
BENCHMARK(BM_Features)->DenseRange(2, 5);

void BM_LossGradient(benchmark::State& state) {
  const auto batch_size = static_cast<std::size_t>(state.range(0));
  const hcr::MlpModel m = hcr::init_model(23, 46, 25, 1);
  std::vector<hcr::Example> batch(batch_size);
  for (std::size_t k = 0; k < batch_size; ++k)
    batch[k] = {std::vector<double>(23, 0.01 * static_cast<double>(k % 100)), k % 25};
  for (auto _ : state) benchmark::DoNotOptimize(hcr::loss_and_gradient(m, batch));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(batch_size));
}
BENCHMARK(BM_LossGradient)->Arg(1)->Arg(750);

}  // namespace

BENCHMARK_MAIN();
