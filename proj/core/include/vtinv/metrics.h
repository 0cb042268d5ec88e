// vtinv/metrics.h

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

#ifndef VTINV_METRICS_H_
#define VTINV_METRICS_H_

#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "vtinv/fft.h"
#include "vtinv/image.h"

namespace vtinv {

// --- NMSE ---------------------------------------------------------------------------

/// Mean squared pixel difference of two equal-sized images.
double FrameMse(const Image &y, const Image &yhat);

/// Mean of (y - yhat)^2 over all frames and pixels; throws kShape on a length
/// or size mismatch.
double Nmse(const ImageSequence &reference, const ImageSequence &predicted);

// --- SSIM ---------------------------------------------------------------------------

struct SsimConfig {
  int window = 11;        // side of the Gaussian window
  double sigma = 1.5;     // pixels
  double alpha = 1.0;     // luminance exponent
  double beta = 1.0;      // contrast exponent
  double gamma = 1.0;     // structure exponent
  double k1 = 0.01;
  double k2 = 0.03;
  double dynamic_range = 1.0;

  double c1() const { return (k1 * dynamic_range) * (k1 * dynamic_range); }
  double c2() const { return (k2 * dynamic_range) * (k2 * dynamic_range); }
  double c3() const { return c2() / 2.0; }
  void Validate() const;
};

/// window x window circular Gaussian weights, row-major, summing to 1.
std::vector<double> GaussianWindow(int window, double sigma);

/// Local SSIM at every valid window position, (h - window + 1) x (w - window + 1).
std::vector<double> SsimMap(const Image &y, const Image &yhat, const SsimConfig &config = {});

/// Mean of SsimMap.
double Ssim(const Image &y, const Image &yhat, const SsimConfig &config = {});

// --- CW-SSIM ------------------------------------------------------------------------

enum class CwSsimMode {
  kWindowed,  // window x window sliding sums, averaged over positions
  kGlobal,    // one sum over the whole coefficient map
};

struct CwSsimConfig {
  int scales = 2;
  int orientations = 4;
  double finest_frequency = 0.25;  // cycles per pixel; halves per coarser scale
  double bandwidth_octaves = 1.0;  // half-power radial bandwidth of each filter
  int window = 7;                  // coefficients per window = window^2
  double k = 0.01;
  CwSsimMode mode = CwSsimMode::kWindowed;

  void Validate() const;
};

/// Complex Gabor filters as DFT-domain responses on a rows x cols grid.
/// Each has a zero DC bin and unit spatial L2 norm.
struct GaborBank {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> frequencies;   // cycles per pixel, per subband
  std::vector<double> orientations;  // radians, per subband
  std::vector<std::vector<double>> responses;  // real-valued, row-major
};

GaborBank MakeGaborBank(std::size_t rows, std::size_t cols, const CwSsimConfig &config = {});

/// Filter impulse response (inverse DFT of one subband's response).
std::vector<Complex> GaborKernel(const GaborBank &bank, std::size_t subband);

/// Circular convolution of `image` with every filter; one complex map per
/// subband.
std::vector<std::vector<Complex>> Decompose(const Image &image, const GaborBank &bank);

double CwSsim(const Image &y, const Image &yhat, const GaborBank &bank,
              const CwSsimConfig &config);
double CwSsim(const Image &y, const Image &yhat, const CwSsimConfig &config = {});

// --- corpus evaluation ----------------------------------------------------------------

struct MetricConfig {
  SsimConfig ssim;
  CwSsimConfig cwssim;
};

struct ReferenceUtterance {
  std::string id;
  std::string speaker;
  ImageSequence frames;
};

struct UtteranceScores {
  std::string speaker;
  std::string id;
  std::vector<double> nmse;    // per frame
  std::vector<double> ssim;    // per frame
  std::vector<double> cwssim;  // per frame
  double mean_nmse = 0.0;
  double mean_ssim = 0.0;
  double mean_cwssim = 0.0;
};

/// Means of the per-utterance means of one speaker.
struct SpeakerScores {
  std::string speaker;
  std::size_t utterances = 0;
  double nmse = 0.0;
  double ssim = 0.0;
  double cwssim = 0.0;
};

struct MetricReport {
  std::vector<UtteranceScores> utterances;  // in reference order
  std::vector<SpeakerScores> speakers;      // sorted by name
};

/// Scores every reference utterance against its prediction. Missing
/// predictions raise kCoverage listing the ids; a frame-count mismatch raises
/// kShape naming the utterance.
MetricReport EvaluateCorpus(std::span<const ReferenceUtterance> references,
                            const std::map<std::string, ImageSequence> &predictions,
                            const MetricConfig &config = {});

/// CSV with columns speaker,utterance_id,frame_index,nmse,ssim,cwssim. Each
/// utterance contributes per-frame rows (1-based frame_index) and a "mean"
/// row; each speaker adds an aggregate row with utterance_id "ALL". With
/// `only_utterance` set, only that utterance's rows are written.
void WriteReportCsv(std::ostream &os, const MetricReport &report,
                    const std::optional<std::string> &only_utterance = std::nullopt);

}  // namespace vtinv

#endif  // VTINV_METRICS_H_
