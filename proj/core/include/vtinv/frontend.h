// vtinv/frontend.h

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

#ifndef VTINV_FRONTEND_H_
#define VTINV_FRONTEND_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "vtinv/corpus.h"

namespace vtinv {

/// Network input width: log gain followed by 24 line spectral frequencies.
inline constexpr int kFeatureDim = 25;

/// Lower bound applied to per-column standard deviations.
inline constexpr double kVarianceFloor = 1e-8;

/// Mel-cepstral analysis parameters.
struct AnalysisConfig {
  int order = 24;           // cepstral order; the feature is order+1 wide
  double alpha = 0.42;      // all-pass frequency warping factor
  int window_len = 1024;    // Hann window, centered on the frame
  int fft_len = 2048;
  double floor_db = -120.0; // power floor applied before the log

  void Validate() const;
};

/// Settings of the unit-circle root search used for LSP conversion.
struct LspSearch {
  int grid_points = 4096;   // uniform in frequency, evaluated at cos(omega)
  double tolerance = 1e-10; // bisection stops below this interval width
  // ExtractFeatures only: a frame whose truncated predictor is not minimum
  // phase is retried with c_k scaled by gamma^k, gamma = 0.98, 0.96, ...,
  // which pulls every predictor root inward by gamma.
  bool stabilize = true;
};

/// Row-major T x cols matrix of frame-synchronous features.
struct FeatureMatrix {
  std::size_t rows = 0;
  std::size_t cols = kFeatureDim;
  int frame_shift = 0;  // samples between rows; 0 when unknown
  std::vector<double> data;

  FeatureMatrix() = default;
  FeatureMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}
  double &at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  double at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
  std::span<const double> row(std::size_t r) const { return {data.data() + r * cols, cols}; }
  std::span<double> row(std::size_t r) { return {data.data() + r * cols, cols}; }
  bool operator==(const FeatureMatrix &) const = default;
};

struct NormStats {
  std::vector<double> mean;
  std::vector<double> std;
};

/// Symmetric Hann taper sin^2(pi (i + 0.5) / n); a length-1 window is {1}.
std::vector<double> HannWindow(int n);

/// Splits `audio` into floor(len / shift) Hann-windowed frames; frame k is
/// centered at sample k * shift and zero-padded past either end.
std::vector<std::vector<double>> FrameSignal(std::span<const double> audio, int shift,
                                             int window_len);

/// First-order all-pass frequency map
///   omega + 2 atan(alpha sin(omega) / (1 - alpha cos(omega))).
/// The inverse map is WarpFrequency(omega, -alpha).
double WarpFrequency(double omega, double alpha);

/// Mel-cepstrum c0..c_order of one windowed frame: the cosine expansion of the
/// floored log power spectrum over the warped frequency axis. With alpha = 0
/// this is the ordinary real cepstrum of the log power spectrum.
std::vector<double> MelCepstrum(std::span<const double> frame, const AnalysisConfig &config);

/// Coefficients 1, a_1..a_order of the minimum-phase all-pole model
/// A(z) = exp(-sum_{n>=1} c_n z^-n), truncated at `order`.
std::vector<double> CepstrumToLpc(std::span<const double> cepstra, int order);

/// Line spectral frequencies of A(z) (order must be even), increasing in
/// (0, pi). Throws kNumeric if fewer than `order` roots are found.
std::vector<double> LpcToLsp(std::span<const double> lpc, const LspSearch &search = {});

/// Rebuilds A(z) = (P(z) + Q(z)) / 2 from increasing line spectral frequencies.
std::vector<double> LspToLpc(std::span<const double> lsp);

/// {c0, lsp_1..lsp_order}.
std::vector<double> CepstrumToLsp(std::span<const double> cepstra, int order,
                                  const LspSearch &search = {});

/// Full analysis chain for one utterance; one row per frame_shift samples.
/// Frames that need bandwidth expansion are counted in *stabilized if given.
FeatureMatrix ExtractFeatures(std::span<const std::int16_t> audio, int frame_shift,
                              const AnalysisConfig &config, const LspSearch &search = {},
                              std::size_t *stabilized = nullptr);

/// Per-column mean and population standard deviation (clamped to
/// kVarianceFloor). Needs at least two rows.
NormStats FitNormalizer(const FeatureMatrix &features);
NormStats FitNormalizer(std::span<const FeatureMatrix> matrices);

FeatureMatrix ApplyNormalizer(const FeatureMatrix &features, const NormStats &stats);
FeatureMatrix InvertNormalizer(const FeatureMatrix &normalized, const NormStats &stats);

/// Pixel values divided by 255.
std::vector<double> ScalePixels(const GrayImage &image);

/// "VTF1" feature file: magic, u32 rows, u32 cols, rows*cols f32, all
/// little-endian.
void WriteFeatures(const std::filesystem::path &path, const FeatureMatrix &features);
FeatureMatrix ReadFeatures(const std::filesystem::path &path);

}  // namespace vtinv

#endif  // VTINV_FRONTEND_H_
