// vtinv/image.h

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

#ifndef VTINV_IMAGE_H_
#define VTINV_IMAGE_H_

#include <vector>

#include "vtinv/corpus.h"

namespace vtinv {

/// Row-major image with values nominally in [0, 1].
struct Image {
  int width = 0;
  int height = 0;
  std::vector<double> pixels;

  Image() = default;
  Image(int w, int h, double fill = 0.0) : width(w), height(h), pixels(std::size_t(w) * h, fill) {}
  double &at(int row, int col) { return pixels[std::size_t(row) * width + col]; }
  double at(int row, int col) const { return pixels[std::size_t(row) * width + col]; }
  bool operator==(const Image &) const = default;
};

using ImageSequence = std::vector<Image>;

/// p / 255 per pixel.
Image ToUnitImage(const GrayImage &image);
ImageSequence ToUnitSequence(const std::vector<GrayImage> &frames);

/// round(255 * clamp(v, 0, 1)) per pixel.
GrayImage ToGrayImage(const Image &image);

}  // namespace vtinv

#endif  // VTINV_IMAGE_H_
