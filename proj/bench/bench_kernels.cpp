// Copyright 2026 The chainvault Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Serial reference kernels vs their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include <random>

#include "chainvault/cryptobox.hpp"
#include "chainvault/fragmenter.hpp"
#include "chainvault/mlbench.hpp"

namespace cv = chainvault;

namespace {

cv::Bytes payload(std::size_t n) {
  std::mt19937_64 rng(1);
  cv::Bytes out(n);
  for (auto& b : out) b = static_cast<std::uint8_t>(rng());
  return out;
}

cv::DataKey key() {
  cv::Bytes raw(32, 0x42);
  return cv::DataKey::from_bytes(raw);
}

constexpr std::size_t kFileSize = 32u << 20;

template <bool Parallel>
void BM_Fragment(benchmark::State& state) {
  auto data = payload(kFileSize);
  auto size = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    auto set = Parallel ? cv::fragment(data, size) : cv::serial::fragment(data, size);
    benchmark::DoNotOptimize(set.manifest.dataset_digest);
  }
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * data.size()));
}

template <bool Parallel>
void BM_Defragment(benchmark::State& state) {
  auto data = payload(kFileSize);
  auto set = cv::fragment(data, static_cast<std::uint64_t>(state.range(0)));
  for (auto _ : state) {
    auto out = Parallel ? cv::defragment(set.fragments, set.manifest)
                        : cv::serial::defragment(set.fragments, set.manifest);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * data.size()));
}

template <bool Parallel>
void BM_Seal(benchmark::State& state) {
  auto data = payload(kFileSize);
  auto k = key();
  auto set = cv::fragment(data, static_cast<std::uint64_t>(state.range(0)));
  cv::RandomNonceSource nonces;
  for (auto _ : state) {
    cv::NonceLedger ledger;
    auto manifest = set.manifest;
    auto blobs = Parallel ? cv::seal_fragments(set.fragments, manifest, "bench", k, nonces, ledger)
                          : cv::serial::seal_fragments(set.fragments, manifest, "bench", k,
                                                       nonces, ledger);
    benchmark::DoNotOptimize(blobs.data());
  }
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * data.size()));
}

template <bool Parallel>
void BM_Open(benchmark::State& state) {
  auto data = payload(kFileSize);
  auto k = key();
  auto set = cv::fragment(data, static_cast<std::uint64_t>(state.range(0)));
  cv::SeededNonceSource nonces(7);
  cv::NonceLedger ledger;
  auto blobs = cv::seal_fragments(set.fragments, set.manifest, "bench", k, nonces, ledger);
  for (auto _ : state) {
    auto frags = Parallel ? cv::open_fragments(blobs, set.manifest, "bench", k)
                          : cv::serial::open_fragments(blobs, set.manifest, "bench", k);
    benchmark::DoNotOptimize(frags.data());
  }
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * data.size()));
}

template <bool Parallel>
void BM_LeastSquares(benchmark::State& state) {
  auto rows = static_cast<std::size_t>(state.range(0));
  auto cols = static_cast<std::size_t>(state.range(1));
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<double> a(rows * cols), b(rows);
  for (auto& v : a) v = u(rng);
  for (auto& v : b) v = u(rng);
  for (auto _ : state) {
    auto x = Parallel ? cv::solve_least_squares(a, rows, cols, b)
                      : cv::serial::solve_least_squares(a, rows, cols, b);
    benchmark::DoNotOptimize(x.data());
  }
}

}  // namespace

BENCHMARK(BM_Fragment<false>)->Name("fragment/serial")->Arg(64 << 10)->Arg(4 << 20)->UseRealTime();
BENCHMARK(BM_Fragment<true>)->Name("fragment/parallel")->Arg(64 << 10)->Arg(4 << 20)->UseRealTime();
BENCHMARK(BM_Defragment<false>)->Name("defragment/serial")->Arg(64 << 10)->UseRealTime();
BENCHMARK(BM_Defragment<true>)->Name("defragment/parallel")->Arg(64 << 10)->UseRealTime();
BENCHMARK(BM_Seal<false>)->Name("seal/serial")->Arg(64 << 10)->Arg(4 << 20)->UseRealTime();
BENCHMARK(BM_Seal<true>)->Name("seal/parallel")->Arg(64 << 10)->Arg(4 << 20)->UseRealTime();
BENCHMARK(BM_Open<false>)->Name("open/serial")->Arg(64 << 10)->UseRealTime();
BENCHMARK(BM_Open<true>)->Name("open/parallel")->Arg(64 << 10)->UseRealTime();
BENCHMARK(BM_LeastSquares<false>)->Name("qr/serial")->Args({1338, 9})->Args({20000, 64})->UseRealTime();
BENCHMARK(BM_LeastSquares<true>)->Name("qr/parallel")->Args({1338, 9})->Args({20000, 64})->UseRealTime();

BENCHMARK_MAIN();
