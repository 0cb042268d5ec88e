// benchmarks/vtinv_bench.cc

// Copyright 2026  The vtinv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

// Microbenchmarks of the hot paths: dense and LSTM passes, feature
// extraction and the two image metrics.

#include <benchmark/benchmark.h>

#include "vtinv/frontend.h"
#include "vtinv/layers.h"
#include "vtinv/metrics.h"
#include "vtinv/models.h"
#include "vtinv/random.h"

namespace vtinv {
namespace {

nn::Tensor Random(nn::Shape shape, std::uint64_t seed) {
  nn::Tensor t(std::move(shape));
  Rng rng(seed);
  for (double &v : t.values()) v = rng.Uniform(-1.0, 1.0);
  return t;
}

Image Frame(std::uint64_t seed) {
  static const auto corpus = GenerateSyntheticCorpus(1, 1, 8, CorpusConfig{});
  return ToUnitImage(corpus[0].frames[seed % 8]);
}

void BM_DenseForward(benchmark::State &state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const nn::Tensor x = Random({128, n}, 1), w = Random({n, n}, 2), b = Random({n}, 3);
  for (auto _ : state) benchmark::DoNotOptimize(nn::DenseForward(x, w, b));
  state.SetItemsProcessed(state.iterations() * 128);
}
BENCHMARK(BM_DenseForward)->Arg(256)->Arg(1000);

void BM_DenseBackward(benchmark::State &state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const nn::Tensor x = Random({128, n}, 1), w = Random({n, n}, 2), g = Random({128, n}, 3);
  for (auto _ : state) benchmark::DoNotOptimize(nn::DenseBackward(x, w, g));
  state.SetItemsProcessed(state.iterations() * 128);
}
BENCHMARK(BM_DenseBackward)->Arg(256)->Arg(1000);

void BM_LstmForwardBackward(benchmark::State &state) {
  const std::size_t h = static_cast<std::size_t>(state.range(0));
  const nn::Tensor x = Random({32, 10, h}, 1);
  const nn::Tensor wx = Random({h, 4 * h}, 2), wh = Random({h, 4 * h}, 3), b = Random({4 * h}, 4);
  const nn::Tensor g = Random({32, 10, h}, 5);
  for (auto _ : state) {
    nn::LstmTrace trace;
    nn::LstmForward(x, wx, wh, b, &trace);
    benchmark::DoNotOptimize(nn::LstmBackward(x, wx, wh, trace, g));
  }
  state.SetItemsProcessed(state.iterations() * 32);
}
BENCHMARK(BM_LstmForwardBackward)->Arg(64)->Arg(256);

void BM_ExtractFeatures(benchmark::State &state) {
  const auto corpus = GenerateSyntheticCorpus(2, 1, 23, CorpusConfig{});
  for (auto _ : state)
    benchmark::DoNotOptimize(ExtractFeatures(corpus[0].audio, 863, AnalysisConfig{}));
  state.SetItemsProcessed(state.iterations() * 23);
}
BENCHMARK(BM_ExtractFeatures);

void BM_Ssim(benchmark::State &state) {
  const Image a = Frame(0), b = Frame(1);
  for (auto _ : state) benchmark::DoNotOptimize(Ssim(a, b));
}
BENCHMARK(BM_Ssim);

void BM_CwSsim(benchmark::State &state) {
  const Image a = Frame(0), b = Frame(1);
  const CwSsimConfig config;
  const GaborBank bank = MakeGaborBank(68, 68, config);
  for (auto _ : state) benchmark::DoNotOptimize(CwSsim(a, b, bank, config));
}
BENCHMARK(BM_CwSsim);

}  // namespace
}  // namespace vtinv

BENCHMARK_MAIN();
