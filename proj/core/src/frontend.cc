// core/src/frontend.cc

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

#include "vtinv/frontend.h"

#include <algorithm>
#include <cmath>

#include "vtinv/error.h"
#include "vtinv/fft.h"

namespace vtinv {

void AnalysisConfig::Validate() const {
  if (!(alpha >= 0.0 && alpha < 1.0))
    Fail(ErrorKind::kValidation, "alpha must lie in [0, 1)");
  if (window_len < 1) Fail(ErrorKind::kValidation, "window_len must be positive");
  if (window_len > fft_len) Fail(ErrorKind::kValidation, "window_len exceeds fft_len");
  if (fft_len % 2 != 0) Fail(ErrorKind::kValidation, "fft_len must be even");
  if (order < 1 || order >= window_len)
    Fail(ErrorKind::kValidation, "order must lie in [1, window_len)");
  if (!std::isfinite(floor_db)) Fail(ErrorKind::kValidation, "floor_db must be finite");
}

std::vector<double> HannWindow(int n) {
  std::vector<double> w(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double s = std::sin(M_PI * (i + 0.5) / n);
    w[i] = s * s;
  }
  return w;
}

std::vector<std::vector<double>> FrameSignal(std::span<const double> audio, int shift,
                                             int window_len) {
  if (shift < 1) Fail(ErrorKind::kValidation, "frame shift must be >= 1");
  if (window_len < shift) Fail(ErrorKind::kValidation, "window_len must be >= frame shift");
  const std::size_t n_frames = audio.size() / static_cast<std::size_t>(shift);
  const std::vector<double> window = HannWindow(window_len);
  const long half = window_len / 2;
  std::vector<std::vector<double>> frames(n_frames, std::vector<double>(window_len, 0.0));
  for (std::size_t k = 0; k < n_frames; ++k) {
    const long start = static_cast<long>(k) * shift - half;
    for (int i = 0; i < window_len; ++i) {
      const long idx = start + i;
      if (idx >= 0 && idx < static_cast<long>(audio.size()))
        frames[k][i] = audio[static_cast<std::size_t>(idx)] * window[i];
    }
  }
  return frames;
}

double WarpFrequency(double omega, double alpha) {
  return omega + 2.0 * std::atan(alpha * std::sin(omega) / (1.0 - alpha * std::cos(omega)));
}

std::vector<double> MelCepstrum(std::span<const double> frame, const AnalysisConfig &config) {
  config.Validate();
  if (frame.size() != static_cast<std::size_t>(config.window_len))
    Fail(ErrorKind::kShape, "frame length " + std::to_string(frame.size()) +
                                " != window_len " + std::to_string(config.window_len));
  for (double x : frame)
    if (!std::isfinite(x)) Fail(ErrorKind::kInput, "non-finite sample in analysis frame");

  const std::size_t n = static_cast<std::size_t>(config.fft_len);
  const std::size_t half = n / 2;
  const double floor_power = std::pow(10.0, config.floor_db / 10.0);
  std::vector<double> log_power = PowerSpectrum(frame, n);
  for (double &p : log_power) p = std::log(std::max(p, floor_power));

  // Resample the log spectrum onto a uniform grid of the warped axis. Bin j of
  // the warped grid sits at warped frequency pi j / half; its source frequency
  // is the inverse warp of that point.
  std::vector<double> warped(half + 1);
  for (std::size_t j = 0; j <= half; ++j) {
    const double target = M_PI * static_cast<double>(j) / static_cast<double>(half);
    double pos = WarpFrequency(target, -config.alpha) / M_PI * static_cast<double>(half);
    pos = std::clamp(pos, 0.0, static_cast<double>(half));
    const std::size_t lo = std::min(static_cast<std::size_t>(pos), half - 1);
    const double frac = pos - static_cast<double>(lo);
    warped[j] = log_power[lo] + frac * (log_power[lo + 1] - log_power[lo]);
  }

  // Inverse DFT of the even, real sequence of length n, evaluated for
  // quefrencies 0..order.
  std::vector<double> cos_table(n);
  for (std::size_t i = 0; i < n; ++i)
    cos_table[i] = std::cos(2.0 * M_PI * static_cast<double>(i) / static_cast<double>(n));
  std::vector<double> cepstra(static_cast<std::size_t>(config.order) + 1);
  for (std::size_t q = 0; q < cepstra.size(); ++q) {
    double sum = warped[0] + ((q % 2 == 0) ? warped[half] : -warped[half]);
    for (std::size_t j = 1; j < half; ++j) sum += 2.0 * warped[j] * cos_table[(j * q) % n];
    cepstra[q] = sum / static_cast<double>(n);
  }
  return cepstra;
}

namespace {

// CepstrumToLsp with bandwidth expansion on failure: scaling c_k by gamma^k
// scales the predictor roots by gamma, so a small enough gamma always yields
// a minimum-phase predictor.
std::vector<double> StableLsp(std::vector<double> cepstra, int order, const LspSearch &search,
                              bool *expanded) {
  *expanded = false;
  try {
    return CepstrumToLsp(cepstra, order, search);
  } catch (const Error &e) {
    if (e.kind() != ErrorKind::kNumeric || !search.stabilize) throw;
  }
  *expanded = true;
  const std::vector<double> original = cepstra;
  for (int step = 1; step <= 25; ++step) {
    const double gamma = 1.0 - 0.02 * step;
    double scale = 1.0;
    for (std::size_t k = 1; k < cepstra.size(); ++k) {
      scale *= gamma;
      cepstra[k] = original[k] * scale;
    }
    try {
      return CepstrumToLsp(cepstra, order, search);
    } catch (const Error &e) {
      if (e.kind() != ErrorKind::kNumeric) throw;
    }
  }
  return CepstrumToLsp(cepstra, order, search);  // reports the final failure
}

}  // namespace

FeatureMatrix ExtractFeatures(std::span<const std::int16_t> audio, int frame_shift,
                              const AnalysisConfig &config, const LspSearch &search,
                              std::size_t *stabilized) {
  config.Validate();
  std::vector<double> signal(audio.size());
  std::transform(audio.begin(), audio.end(), signal.begin(),
                 [](std::int16_t s) { return s / 32768.0; });
  const auto frames = FrameSignal(signal, frame_shift, config.window_len);
  FeatureMatrix features(frames.size(), static_cast<std::size_t>(config.order) + 1);
  features.frame_shift = frame_shift;
  for (std::size_t t = 0; t < frames.size(); ++t) {
    const std::vector<double> cepstra = MelCepstrum(frames[t], config);
    std::vector<double> row;
    bool expanded = false;
    try {
      row = StableLsp(cepstra, config.order, search, &expanded);
    } catch (const Error &e) {
      Fail(e.kind(), "frame " + std::to_string(t) + ": " + e.what());
    }
    if (expanded && stabilized) ++*stabilized;
    std::copy(row.begin(), row.end(), features.row(t).begin());
  }
  return features;
}

NormStats FitNormalizer(const FeatureMatrix &features) {
  return FitNormalizer(std::span<const FeatureMatrix>(&features, 1));
}

NormStats FitNormalizer(std::span<const FeatureMatrix> matrices) {
  if (matrices.empty()) Fail(ErrorKind::kSize, "no feature matrices to fit");
  const std::size_t cols = matrices.front().cols;
  std::size_t rows = 0;
  NormStats stats{std::vector<double>(cols, 0.0), std::vector<double>(cols, 0.0)};
  for (const auto &m : matrices) {
    if (m.cols != cols) Fail(ErrorKind::kShape, "feature matrices differ in width");
    rows += m.rows;
    for (std::size_t r = 0; r < m.rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) stats.mean[c] += m.at(r, c);
  }
  if (rows < 2)
    Fail(ErrorKind::kSize, "normalizer needs at least 2 rows, got " + std::to_string(rows));
  for (double &m : stats.mean) m /= static_cast<double>(rows);
  for (const auto &m : matrices)
    for (std::size_t r = 0; r < m.rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) {
        const double d = m.at(r, c) - stats.mean[c];
        stats.std[c] += d * d;
      }
  for (double &s : stats.std) s = std::max(std::sqrt(s / static_cast<double>(rows)), kVarianceFloor);
  return stats;
}

namespace {

void CheckStats(const FeatureMatrix &features, const NormStats &stats) {
  if (stats.mean.size() != features.cols || stats.std.size() != features.cols)
    Fail(ErrorKind::kShape, "normalizer has " + std::to_string(stats.mean.size()) +
                                " columns, features have " + std::to_string(features.cols));
}

}  // namespace

FeatureMatrix ApplyNormalizer(const FeatureMatrix &features, const NormStats &stats) {
  CheckStats(features, stats);
  FeatureMatrix out = features;
  for (std::size_t r = 0; r < out.rows; ++r)
    for (std::size_t c = 0; c < out.cols; ++c)
      out.at(r, c) = (out.at(r, c) - stats.mean[c]) / stats.std[c];
  return out;
}

FeatureMatrix InvertNormalizer(const FeatureMatrix &normalized, const NormStats &stats) {
  CheckStats(normalized, stats);
  FeatureMatrix out = normalized;
  for (std::size_t r = 0; r < out.rows; ++r)
    for (std::size_t c = 0; c < out.cols; ++c)
      out.at(r, c) = out.at(r, c) * stats.std[c] + stats.mean[c];
  return out;
}

std::vector<double> ScalePixels(const GrayImage &image) {
  std::vector<double> scaled(image.pixels.size());
  std::transform(image.pixels.begin(), image.pixels.end(), scaled.begin(),
                 [](std::uint8_t p) { return p / 255.0; });
  return scaled;
}

}  // namespace vtinv
