// core/src/cwssim.cc

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

#include <cmath>
#include <numbers>

#include "vtinv/error.h"
#include "vtinv/metrics.h"

namespace vtinv {

namespace {

// Signed DFT frequency of bin k out of n, in cycles per sample.
double BinFrequency(std::size_t k, std::size_t n) {
  const double f = static_cast<double>(k) / static_cast<double>(n);
  return k * 2 > n ? f - 1.0 : f;
}

// Window sums of c1 conj(c2), |c1|^2 and |c2|^2 and the resulting index.
struct Accum {
  double re = 0.0, im = 0.0, e1 = 0.0, e2 = 0.0;
  void Add(const Complex &a, const Complex &b) {
    re += a.real() * b.real() + a.imag() * b.imag();
    im += a.imag() * b.real() - a.real() * b.imag();
    e1 += a.real() * a.real() + a.imag() * a.imag();
    e2 += b.real() * b.real() + b.imag() * b.imag();
  }
  double Index(double k) const {
    return (2.0 * std::hypot(re, im) + k) / (e1 + e2 + k);
  }
};

}  // namespace

void CwSsimConfig::Validate() const {
  if (scales < 1 || orientations < 1)
    Fail(ErrorKind::kValidation, "CW-SSIM needs at least one scale and one orientation");
  if (!(finest_frequency > 0.0 && finest_frequency <= 0.5))
    Fail(ErrorKind::kValidation, "CW-SSIM finest_frequency must lie in (0, 0.5]");
  if (!(bandwidth_octaves > 0.0))
    Fail(ErrorKind::kValidation, "CW-SSIM bandwidth must be positive");
  if (window < 1) Fail(ErrorKind::kValidation, "CW-SSIM window must be >= 1");
  if (!(k > 0.0)) Fail(ErrorKind::kValidation, "CW-SSIM K must be positive");
}

GaborBank MakeGaborBank(std::size_t rows, std::size_t cols, const CwSsimConfig &config) {
  config.Validate();
  if (rows == 0 || cols == 0) Fail(ErrorKind::kShape, "Gabor bank on an empty grid");
  GaborBank bank;
  bank.rows = rows;
  bank.cols = cols;
  // Radial half-power bandwidth b octaves gives a Gaussian of standard
  // deviation f (2^b - 1) / ((2^b + 1) sqrt(2 ln 2)) around center f.
  const double b = std::pow(2.0, config.bandwidth_octaves);
  const double spread = (b - 1.0) / ((b + 1.0) * std::sqrt(2.0 * std::numbers::ln2));
  const double n = static_cast<double>(rows * cols);
  for (int s = 0; s < config.scales; ++s) {
    const double f = config.finest_frequency / std::pow(2.0, s);
    const double sd = f * spread;
    for (int o = 0; o < config.orientations; ++o) {
      const double theta = std::numbers::pi * o / config.orientations;
      const double fu = f * std::cos(theta), fv = f * std::sin(theta);
      std::vector<double> g(rows * cols);
      double energy = 0.0;
      for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) {
          const double dv = BinFrequency(r, rows) - fv, du = BinFrequency(c, cols) - fu;
          const double v = std::exp(-(du * du + dv * dv) / (2.0 * sd * sd));
          g[r * cols + c] = v;
        }
      g[0] = 0.0;
      for (double v : g) energy += v * v;
      if (!(energy > 0.0))
        Fail(ErrorKind::kNumeric, "Gabor filter at frequency " + std::to_string(f) +
                                      " has no energy on a " + std::to_string(rows) + "x" +
                                      std::to_string(cols) + " grid");
      // Parseval: spatial energy is sum |G|^2 / N.
      const double scale = std::sqrt(n / energy);
      for (double &v : g) v *= scale;
      bank.frequencies.push_back(f);
      bank.orientations.push_back(theta);
      bank.responses.push_back(std::move(g));
    }
  }
  return bank;
}

std::vector<Complex> GaborKernel(const GaborBank &bank, std::size_t subband) {
  const auto &g = bank.responses.at(subband);
  std::vector<Complex> spectrum(g.begin(), g.end());
  return Fft2d(spectrum, bank.rows, bank.cols, true);
}

std::vector<std::vector<Complex>> Decompose(const Image &image, const GaborBank &bank) {
  if (std::size_t(image.height) != bank.rows || std::size_t(image.width) != bank.cols)
    Fail(ErrorKind::kShape, "image " + std::to_string(image.height) + "x" +
                                std::to_string(image.width) + " does not match the " +
                                std::to_string(bank.rows) + "x" + std::to_string(bank.cols) +
                                " filter bank");
  const std::vector<Complex> pixels(image.pixels.begin(), image.pixels.end());
  const std::vector<Complex> spectrum = Fft2d(pixels, bank.rows, bank.cols, false);
  std::vector<std::vector<Complex>> maps;
  maps.reserve(bank.responses.size());
  std::vector<Complex> product(spectrum.size());
  for (const auto &g : bank.responses) {
    for (std::size_t i = 0; i < spectrum.size(); ++i) product[i] = spectrum[i] * g[i];
    maps.push_back(Fft2d(product, bank.rows, bank.cols, true));
  }
  return maps;
}

double CwSsim(const Image &y, const Image &yhat, const GaborBank &bank,
              const CwSsimConfig &config) {
  config.Validate();
  if (y.width != yhat.width || y.height != yhat.height)
    Fail(ErrorKind::kShape, "cwssim: image sizes differ");
  const auto a = Decompose(y, bank), b = Decompose(yhat, bank);
  const std::size_t rows = bank.rows, cols = bank.cols;
  const std::size_t win = static_cast<std::size_t>(config.window);
  if (config.mode == CwSsimMode::kWindowed && (rows < win || cols < win))
    Fail(ErrorKind::kShape, "cwssim: image smaller than the " + std::to_string(win) +
                                "-coefficient window");
  double total = 0.0;
  for (std::size_t s = 0; s < a.size(); ++s) {
    const auto &ma = a[s], &mb = b[s];
    if (config.mode == CwSsimMode::kGlobal) {
      Accum acc;
      for (std::size_t i = 0; i < ma.size(); ++i) acc.Add(ma[i], mb[i]);
      total += acc.Index(config.k);
      continue;
    }
    double band = 0.0;
    for (std::size_t r = 0; r + win <= rows; ++r)
      for (std::size_t c = 0; c + win <= cols; ++c) {
        Accum acc;
        for (std::size_t i = 0; i < win; ++i)
          for (std::size_t j = 0; j < win; ++j) {
            const std::size_t k = (r + i) * cols + c + j;
            acc.Add(ma[k], mb[k]);
          }
        band += acc.Index(config.k);
      }
    total += band / static_cast<double>((rows - win + 1) * (cols - win + 1));
  }
  return total / static_cast<double>(a.size());
}

double CwSsim(const Image &y, const Image &yhat, const CwSsimConfig &config) {
  const GaborBank bank = MakeGaborBank(std::size_t(y.height), std::size_t(y.width), config);
  return CwSsim(y, yhat, bank, config);
}

}  // namespace vtinv
