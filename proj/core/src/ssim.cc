// core/src/ssim.cc

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
#include <cmath>
#include <numeric>

#include "vtinv/error.h"
#include "vtinv/metrics.h"

namespace vtinv {

namespace {

void CheckSameSize(const Image &a, const Image &b, const char *what) {
  if (a.width != b.width || a.height != b.height)
    Fail(ErrorKind::kShape, std::string(what) + ": image sizes differ (" +
                                std::to_string(a.height) + "x" + std::to_string(a.width) +
                                " vs " + std::to_string(b.height) + "x" +
                                std::to_string(b.width) + ")");
}

// Normalized 1-D Gaussian taps; the 2-D window is their outer product.
std::vector<double> GaussianTaps(int window, double sigma) {
  std::vector<double> g(window);
  const double c = (window - 1) / 2.0;
  for (int i = 0; i < window; ++i) g[i] = std::exp(-(i - c) * (i - c) / (2.0 * sigma * sigma));
  const double sum = std::accumulate(g.begin(), g.end(), 0.0);
  for (double &v : g) v /= sum;
  return g;
}

// Valid-region separable filtering of a h x w plane with taps g.
std::vector<double> Filter(const std::vector<double> &plane, int h, int w,
                           const std::vector<double> &g) {
  const int n = static_cast<int>(g.size());
  const int oh = h - n + 1, ow = w - n + 1;
  std::vector<double> rows(std::size_t(h) * ow, 0.0);
  for (int r = 0; r < h; ++r)
    for (int c = 0; c < ow; ++c) {
      double s = 0.0;
      for (int k = 0; k < n; ++k) s += g[k] * plane[std::size_t(r) * w + c + k];
      rows[std::size_t(r) * ow + c] = s;
    }
  std::vector<double> out(std::size_t(oh) * ow, 0.0);
  for (int r = 0; r < oh; ++r)
    for (int c = 0; c < ow; ++c) {
      double s = 0.0;
      for (int k = 0; k < n; ++k) s += g[k] * rows[std::size_t(r + k) * ow + c];
      out[std::size_t(r) * ow + c] = s;
    }
  return out;
}

}  // namespace

double FrameMse(const Image &y, const Image &yhat) {
  CheckSameSize(y, yhat, "mse");
  double sum = 0.0;
  for (std::size_t i = 0; i < y.pixels.size(); ++i) {
    const double d = y.pixels[i] - yhat.pixels[i];
    sum += d * d;
  }
  return y.pixels.empty() ? 0.0 : sum / static_cast<double>(y.pixels.size());
}

double Nmse(const ImageSequence &reference, const ImageSequence &predicted) {
  if (reference.size() != predicted.size())
    Fail(ErrorKind::kShape, "nmse: " + std::to_string(reference.size()) + " reference vs " +
                                std::to_string(predicted.size()) + " predicted frames");
  if (reference.empty()) Fail(ErrorKind::kSize, "nmse of an empty sequence");
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t t = 0; t < reference.size(); ++t) {
    CheckSameSize(reference[t], predicted[t], "nmse");
    for (std::size_t i = 0; i < reference[t].pixels.size(); ++i) {
      const double d = reference[t].pixels[i] - predicted[t].pixels[i];
      sum += d * d;
    }
    count += reference[t].pixels.size();
  }
  return sum / static_cast<double>(count);
}

void SsimConfig::Validate() const {
  if (window < 1) Fail(ErrorKind::kValidation, "SSIM window must be >= 1");
  if (!(sigma > 0.0)) Fail(ErrorKind::kValidation, "SSIM sigma must be positive");
  if (!(alpha > 0.0 && beta > 0.0 && gamma > 0.0))
    Fail(ErrorKind::kValidation, "SSIM exponents must be positive");
  if (!(k1 > 0.0 && k2 > 0.0 && dynamic_range > 0.0))
    Fail(ErrorKind::kValidation, "SSIM stabilizers must be positive");
}

std::vector<double> GaussianWindow(int window, double sigma) {
  const std::vector<double> g = GaussianTaps(window, sigma);
  std::vector<double> w(std::size_t(window) * window);
  for (int r = 0; r < window; ++r)
    for (int c = 0; c < window; ++c) w[std::size_t(r) * window + c] = g[r] * g[c];
  return w;
}

std::vector<double> SsimMap(const Image &y, const Image &yhat, const SsimConfig &config) {
  config.Validate();
  CheckSameSize(y, yhat, "ssim");
  const int h = y.height, w = y.width;
  if (h < config.window || w < config.window)
    Fail(ErrorKind::kShape, "ssim: image " + std::to_string(h) + "x" + std::to_string(w) +
                                " is smaller than the " + std::to_string(config.window) +
                                "-pixel window");
  const std::size_t n = y.pixels.size();
  std::vector<double> xx(n), yy(n), xy(n);
  for (std::size_t i = 0; i < n; ++i) {
    xx[i] = y.pixels[i] * y.pixels[i];
    yy[i] = yhat.pixels[i] * yhat.pixels[i];
    xy[i] = y.pixels[i] * yhat.pixels[i];
  }
  const std::vector<double> g = GaussianTaps(config.window, config.sigma);
  const auto mu_x = Filter(y.pixels, h, w, g), mu_y = Filter(yhat.pixels, h, w, g);
  const auto e_xx = Filter(xx, h, w, g), e_yy = Filter(yy, h, w, g), e_xy = Filter(xy, h, w, g);

  const double c1 = config.c1(), c2 = config.c2(), c3 = config.c3();
  const bool unit = config.alpha == 1.0 && config.beta == 1.0 && config.gamma == 1.0;
  std::vector<double> map(mu_x.size());
  for (std::size_t i = 0; i < map.size(); ++i) {
    const double mx = mu_x[i], my = mu_y[i];
    const double vx = e_xx[i] - mx * mx, vy = e_yy[i] - my * my, cxy = e_xy[i] - mx * my;
    if (unit) {  // with C3 = C2/2 the product collapses to the two-term form
      map[i] = ((2.0 * mx * my + c1) * (2.0 * cxy + c2)) /
               ((mx * mx + my * my + c1) * (vx + vy + c2));
    } else {
      const double sx = std::sqrt(std::max(vx, 0.0)), sy = std::sqrt(std::max(vy, 0.0));
      const double l = (2.0 * mx * my + c1) / (mx * mx + my * my + c1);
      const double c = (2.0 * sx * sy + c2) / (vx + vy + c2);
      const double s = (cxy + c3) / (sx * sy + c3);
      map[i] = std::pow(l, config.alpha) * std::pow(c, config.beta) *
               (s < 0.0 ? -std::pow(-s, config.gamma) : std::pow(s, config.gamma));
    }
  }
  return map;
}

double Ssim(const Image &y, const Image &yhat, const SsimConfig &config) {
  const std::vector<double> map = SsimMap(y, yhat, config);
  return std::accumulate(map.begin(), map.end(), 0.0) / static_cast<double>(map.size());
}

}  // namespace vtinv
