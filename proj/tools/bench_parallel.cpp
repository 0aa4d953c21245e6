// Copyright 2026 The helpful Authors
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

// Times every OpenMP kernel against its serial reference on a synthetic
// corpus and checks that the two produce bitwise-identical results.

#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "helpful/correlation.hpp"
#include "helpful/features.hpp"
#include "helpful/ingest.hpp"
#include "helpful/metrics.hpp"
#include "helpful/model.hpp"
#include "helpful/parallel.hpp"
#include "helpful/synthetic.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double time_ms(const std::function<void()>& fn, int repeat) {
  double best = 1e300;
  for (int i = 0; i < repeat; ++i) {
    const auto t0 = Clock::now();
    fn();
    const auto t1 = Clock::now();
    best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  return best;
}

void report(const char* name, double serial_ms, double parallel_ms, bool equal) {
  std::printf("%-18s %10.2f ms %10.2f ms %8.2fx   %s\n", name, serial_ms, parallel_ms,
              serial_ms / parallel_ms, equal ? "bitwise-equal" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"serial vs OpenMP kernel benchmark"};
  std::int64_t n = 100000;
  int threads = static_cast<int>(std::thread::hardware_concurrency());
  int repeat = 3;
  app.add_option("--n", n, "synthetic corpus size");
  app.add_option("--threads", threads, "threads for the parallel pass");
  app.add_option("--repeat", repeat, "repetitions (best time wins)");
  CLI11_PARSE(app, argc, argv);

  using namespace helpful;

  const Dataset ds = generate_synthetic(n, 7, 0.9);
  std::vector<std::string> lines(ds.size());
  for (std::size_t i = 0; i < ds.size(); ++i) lines[i] = serialize_review(ds.reviews[i]);

  FeatureSpec spec;
  spec.enabled = kAllFeatures;
  const SentimentLexicon& lexicon = builtin_lexicon();

  std::printf("n = %lld, serial vs %d threads, best of %d\n", static_cast<long long>(n), threads,
              repeat);
  std::printf("%-18s %13s %13s %9s\n", "kernel", "serial", "parallel", "speedup");

  IngestFilter filter;
  ParsedLines parsed_s, parsed_p;
  parallel::set_threads(1);
  const double parse_s = time_ms([&] { parsed_s = parse_records_serial(lines, filter); }, repeat);
  parallel::set_threads(threads);
  const double parse_p = time_ms([&] { parsed_p = parse_records(lines, filter); }, repeat);
  report("parse_records", parse_s, parse_p,
         parsed_s.reviews == parsed_p.reviews && parsed_s.stats == parsed_p.stats);

  FeatureMatrix feat_s, feat_p;
  parallel::set_threads(1);
  const double feat_ser = time_ms([&] { feat_s = build_features_serial(ds, spec, lexicon); }, repeat);
  parallel::set_threads(threads);
  const double feat_par = time_ms([&] { feat_p = build_features(ds, spec, lexicon); }, repeat);
  report("build_features", feat_ser, feat_par, feat_s == feat_p);

  CorrelationMatrix corr_s, corr_p;
  parallel::set_threads(1);
  const double corr_ser = time_ms([&] { corr_s = correlation_matrix_serial(feat_s); }, repeat);
  parallel::set_threads(threads);
  const double corr_par = time_ms([&] { corr_p = correlation_matrix(feat_p); }, repeat);
  report("correlation", corr_ser, corr_par,
         corr_s.r == corr_p.r && corr_s.defined == corr_p.defined);

  ModelConfig mcfg;
  mcfg.kind = ModelKind::kMlp64Deep;
  mcfg.input_dim = static_cast<int>(feat_s.n_cols());
  mcfg.seed = 11;
  const Model model = init_model(mcfg);
  std::vector<int> rows(feat_s.n_rows);
  std::iota(rows.begin(), rows.end(), 0);

  BatchResult grad_s, grad_p;
  parallel::set_threads(1);
  const double grad_ser = time_ms(
      [&] { grad_s = batch_gradients_serial(model, feat_s, rows, Mode::kTrain, 99); }, repeat);
  parallel::set_threads(threads);
  const double grad_par =
      time_ms([&] { grad_p = batch_gradients(model, feat_s, rows, Mode::kTrain, 99); }, repeat);
  report("batch_gradients", grad_ser, grad_par,
         grad_s.loss == grad_p.loss && grad_s.grads == grad_p.grads);

  Histogram hist_s, hist_p;
  parallel::set_threads(1);
  const double hist_ser = time_ms(
      [&] { hist_s = bucketed_mean_serial(ds, XField::kTextLength, YField::kRating, 70.0); },
      repeat);
  parallel::set_threads(threads);
  const double hist_par = time_ms(
      [&] { hist_p = bucketed_mean(ds, XField::kTextLength, YField::kRating, 70.0); }, repeat);
  bool hist_equal = hist_s.buckets.size() == hist_p.buckets.size();
  for (std::size_t i = 0; hist_equal && i < hist_s.buckets.size(); ++i) {
    const auto& a = hist_s.buckets[i];
    const auto& b = hist_p.buckets[i];
    hist_equal = a.count == b.count && a.value == b.value && a.has_value == b.has_value;
  }
  report("bucketed_mean", hist_ser, hist_par, hist_equal);

  return 0;
}
