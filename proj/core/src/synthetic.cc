// core/src/synthetic.cc

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

// Desk-scale stand-in for an rtMRI corpus. A three-dimensional latent
// trajectory (aperture, curvature, vertical position), each component a
// normalized sum of slow sinusoids, drives
//   - a dark curved channel in a bright 68x68 image, and
//   - the gain and line spectral frequencies of an all-pole filter that
//     colours white noise to produce the audio.

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "vtinv/corpus.h"
#include "vtinv/error.h"
#include "vtinv/frontend.h"
#include "vtinv/random.h"

namespace vtinv {
namespace {

constexpr int kOrder = 24;
constexpr int kSinusoids = 3;

std::uint64_t SplitMix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t UtteranceSeed(std::uint64_t seed, std::size_t index, std::uint64_t stream) {
  return SplitMix(SplitMix(seed) ^ SplitMix(index * 2 + stream + 1));
}

// Fixed loading of latent dimension d on line spectral frequency k, in [-1, 1].
double LspLoading(int d, int k) { return std::cos(0.7 * (d + 1) * (k + 1) + d); }

}  // namespace

std::vector<double> SyntheticLatent(std::uint64_t seed, std::size_t index,
                                    std::size_t frames, double frame_rate) {
  Rng rng(UtteranceSeed(seed, index, 0));
  std::vector<double> latent(frames * kLatentDims, 0.0);
  for (int d = 0; d < kLatentDims; ++d) {
    double freq[kSinusoids], phase[kSinusoids], amp[kSinusoids], amp_sum = 0.0;
    for (int s = 0; s < kSinusoids; ++s) {
      freq[s] = rng.Uniform(0.15, 1.5);  // Hz
      phase[s] = rng.Uniform(0.0, 2.0 * M_PI);
      amp[s] = rng.Uniform(0.3, 1.0);
      amp_sum += amp[s];
    }
    for (std::size_t t = 0; t < frames; ++t) {
      const double time = static_cast<double>(t) / frame_rate;
      double v = 0.0;
      for (int s = 0; s < kSinusoids; ++s)
        v += amp[s] * std::sin(2.0 * M_PI * freq[s] * time + phase[s]);
      latent[t * kLatentDims + d] = v / amp_sum;
    }
  }
  return latent;
}

std::vector<double> SyntheticFeatureTrack(const std::vector<double> &latent,
                                          std::size_t frames) {
  if (latent.size() != frames * kLatentDims)
    Fail(ErrorKind::kShape, "latent trajectory size mismatch");
  const double spacing = M_PI / (kOrder + 1);
  std::vector<double> track(frames * (kOrder + 1));
  for (std::size_t t = 0; t < frames; ++t) {
    const double *z = &latent[t * kLatentDims];
    double *row = &track[t * (kOrder + 1)];
    row[0] = std::log(0.02) + 0.8 * z[0];  // log excitation gain
    for (int k = 0; k < kOrder; ++k) {
      double shift = 0.0;
      for (int d = 0; d < kLatentDims; ++d) shift += LspLoading(d, k) * z[d];
      // |shift| stays below 0.4 spacings, so neighbours cannot cross.
      row[k + 1] = (k + 1) * spacing + 0.4 * spacing * shift / kLatentDims;
    }
  }
  return track;
}

GrayImage RenderTube(const double *z, int size) {
  GrayImage image(size, size);
  const double scale = size / 68.0;
  const double half_width = (5.0 + 3.0 * z[0]) * scale;
  const double curvature = 0.012 * z[1] / scale;
  const double center_row = size / 2.0 + 6.0 * z[2] * scale;
  const double mid_col = (size - 1) / 2.0;
  for (int r = 0; r < size; ++r) {
    for (int c = 0; c < size; ++c) {
      const double dc = c - mid_col;
      const double channel_row = center_row + curvature * dc * dc;
      const double dist = std::abs(r - channel_row);
      const double tissue = 150.0 + 60.0 * std::sin(M_PI * (c + 0.5) / size);
      const double inside = 1.0 / (1.0 + std::exp(-(half_width - dist) / (0.8 * scale)));
      const double value = tissue - (tissue - 20.0) * inside;
      image.at(r, c) = static_cast<std::uint8_t>(std::clamp(std::lround(value), 0L, 255L));
    }
  }
  return image;
}

std::vector<Utterance> GenerateSyntheticCorpus(std::uint64_t seed, std::size_t n_utterances,
                                               std::size_t frames_per_utterance,
                                               const CorpusConfig &config) {
  config.Validate();
  if (n_utterances < 1) Fail(ErrorKind::kValidation, "need at least one utterance");
  if (frames_per_utterance < 1) Fail(ErrorKind::kValidation, "need at least one frame per utterance");
  const std::size_t shift = static_cast<std::size_t>(config.frame_shift);

  std::vector<Utterance> corpus;
  corpus.reserve(n_utterances);
  for (std::size_t u = 0; u < n_utterances; ++u) {
    const std::vector<double> latent =
        SyntheticLatent(seed, u, frames_per_utterance, config.frame_rate);
    const std::vector<double> track = SyntheticFeatureTrack(latent, frames_per_utterance);

    Utterance utt;
    char id[32];
    std::snprintf(id, sizeof(id), "syn_%04zu", u + 1);
    utt.id = id;
    utt.speaker = "syn";
    utt.audio.resize(frames_per_utterance * shift);
    utt.frames.reserve(frames_per_utterance);

    Rng noise(UtteranceSeed(seed, u, 1));
    std::vector<double> history(kOrder, 0.0);  // y[n-1], y[n-2], ...
    for (std::size_t t = 0; t < frames_per_utterance; ++t) {
      utt.frames.push_back(RenderTube(&latent[t * kLatentDims], config.image_size));
      const double *row = &track[t * (kOrder + 1)];
      const std::vector<double> a = LspToLpc(std::span<const double>(row + 1, kOrder));
      const double gain = std::exp(row[0]);
      for (std::size_t i = 0; i < shift; ++i) {
        double y = gain * noise.Gaussian();
        for (int k = 1; k <= kOrder; ++k) y -= a[k] * history[k - 1];
        std::rotate(history.rbegin(), history.rbegin() + 1, history.rend());
        history[0] = y;
        const long sample = std::lround(y * 32768.0);
        utt.audio[t * shift + i] = static_cast<std::int16_t>(std::clamp(sample, -32767L, 32767L));
      }
    }
    corpus.push_back(std::move(utt));
  }
  return corpus;
}

}  // namespace vtinv
