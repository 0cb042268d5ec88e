// core/src/metrics.cc

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

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "vtinv/error.h"
#include "vtinv/metrics.h"

namespace vtinv {

namespace {

double Mean(const std::vector<double> &v) {
  double s = 0.0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

// Runs fn(i) for i in [0, n) on a few threads. Every index writes its own
// slot, so results do not depend on scheduling.
template <typename Fn>
void ParallelFor(std::size_t n, Fn fn) {
  const std::size_t workers =
      std::min<std::size_t>(n, std::max(1u, std::thread::hardware_concurrency()));
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto body = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < n;) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(body);
  body();
  for (auto &t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace

MetricReport EvaluateCorpus(std::span<const ReferenceUtterance> references,
                            const std::map<std::string, ImageSequence> &predictions,
                            const MetricConfig &config) {
  config.ssim.Validate();
  config.cwssim.Validate();
  std::string missing;
  for (const auto &ref : references)
    if (!predictions.contains(ref.id)) missing += (missing.empty() ? "" : ", ") + ref.id;
  if (!missing.empty()) Fail(ErrorKind::kCoverage, "no predictions for: " + missing);

  MetricReport report;
  std::map<std::pair<std::size_t, std::size_t>, GaborBank> banks;
  struct Job {
    std::size_t utt, frame;
  };
  std::vector<Job> jobs;
  for (std::size_t u = 0; u < references.size(); ++u) {
    const ReferenceUtterance &ref = references[u];
    const ImageSequence &pred = predictions.at(ref.id);
    if (pred.size() != ref.frames.size())
      Fail(ErrorKind::kShape, "utterance " + ref.id + ": " + std::to_string(ref.frames.size()) +
                                  " reference frames vs " + std::to_string(pred.size()) +
                                  " predicted");
    UtteranceScores scores;
    scores.speaker = ref.speaker;
    scores.id = ref.id;
    scores.nmse.resize(pred.size());
    scores.ssim.resize(pred.size());
    scores.cwssim.resize(pred.size());
    report.utterances.push_back(std::move(scores));
    for (std::size_t t = 0; t < pred.size(); ++t) {
      const Image &y = ref.frames[t], &yhat = pred[t];
      if (y.width != yhat.width || y.height != yhat.height)
        Fail(ErrorKind::kShape, "utterance " + ref.id + " frame " + std::to_string(t + 1) +
                                    ": predicted image size differs from the reference");
      const auto key = std::make_pair(std::size_t(y.height), std::size_t(y.width));
      if (!banks.contains(key)) banks.emplace(key, MakeGaborBank(key.first, key.second,
                                                                  config.cwssim));
      jobs.push_back({u, t});
    }
  }

  ParallelFor(jobs.size(), [&](std::size_t j) {
    const auto [u, t] = jobs[j];
    const Image &y = references[u].frames[t];
    const Image &yhat = predictions.at(references[u].id)[t];
    const GaborBank &bank = banks.at({std::size_t(y.height), std::size_t(y.width)});
    UtteranceScores &s = report.utterances[u];
    s.nmse[t] = FrameMse(y, yhat);
    s.ssim[t] = Ssim(y, yhat, config.ssim);
    s.cwssim[t] = CwSsim(y, yhat, bank, config.cwssim);
  });

  std::map<std::string, SpeakerScores> speakers;
  for (UtteranceScores &s : report.utterances) {
    s.mean_nmse = Mean(s.nmse);
    s.mean_ssim = Mean(s.ssim);
    s.mean_cwssim = Mean(s.cwssim);
    SpeakerScores &agg = speakers[s.speaker];
    agg.speaker = s.speaker;
    agg.utterances += 1;
    agg.nmse += s.mean_nmse;
    agg.ssim += s.mean_ssim;
    agg.cwssim += s.mean_cwssim;
  }
  for (auto &[name, agg] : speakers) {
    const double n = static_cast<double>(agg.utterances);
    agg.nmse /= n;
    agg.ssim /= n;
    agg.cwssim /= n;
    report.speakers.push_back(agg);
  }
  return report;
}

}  // namespace vtinv
