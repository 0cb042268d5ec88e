// vtinv/models.h

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

#ifndef VTINV_MODELS_H_
#define VTINV_MODELS_H_

#include <cstdint>
#include <span>
#include <string>

#include "vtinv/frontend.h"
#include "vtinv/image.h"
#include "vtinv/network.h"

namespace vtinv {

enum class Architecture { kFcDnn, kCnn, kLstm };

/// "fcdnn", "cnn", "lstm".
const char *ArchitectureName(Architecture arch);
Architecture ParseArchitecture(const std::string &name);

/// Layer widths. The defaults are the full-size networks; smaller values give
/// desk-scale variants that exercise the same code paths.
struct ArchSizes {
  std::size_t input_dim = kFeatureDim;
  std::size_t image_size = 68;

  // FC-DNN: input -> fc_depth x [fc_width, ReLU] -> image_size^2 linear.
  std::size_t fc_width = 1000;
  std::size_t fc_depth = 5;

  // CNN: input -> cnn_dense ReLU -> (image_size/4)^2 * cnn_filters ReLU
  //   -> reshape -> upsample2 -> conv3x3 cnn_filters ReLU -> upsample2
  //   -> conv3x3 1 linear.
  std::size_t cnn_dense = 500;
  std::size_t cnn_filters = 8;

  // LSTM: per-step lstm_fc_depth x [lstm_fc_width, ReLU] -> lstm_layers LSTMs
  //   of lstm_hidden units -> last step -> image_size^2 linear.
  std::size_t lstm_fc_width = 575;
  std::size_t lstm_fc_depth = 3;
  std::size_t lstm_hidden = 575;
  std::size_t lstm_layers = 2;
  std::size_t seq_len = 10;

  bool operator==(const ArchSizes &) const = default;
};

/// Name and member of every ArchSizes field, for config files and manifests.
struct ArchSizeField {
  const char *name;
  std::size_t ArchSizes::*member;
};
std::span<const ArchSizeField> ArchSizeFields();

struct Model {
  Architecture arch = Architecture::kFcDnn;
  ArchSizes sizes;
  nn::Network net;
  NormStats norm;  // input normalization fitted on the training set; may be empty

  std::size_t output_dim() const { return sizes.image_size * sizes.image_size; }
  /// Per-sample input shape: {input_dim} or {seq_len, input_dim}.
  nn::Shape SampleShape() const;
};

Model BuildFcDnn(const ArchSizes &sizes = {});
Model BuildCnn(const ArchSizes &sizes = {});
Model BuildLstm(const ArchSizes &sizes = {});
Model BuildModel(Architecture arch, const ArchSizes &sizes = {});

/// Total number of scalar parameters.
std::size_t CountParams(const Model &model);

/// Sliding windows of `seq_len` rows ending at every row t, [rows, seq_len,
/// cols]. Rows before the start repeat row 0.
nn::Tensor MakeWindows(const FeatureMatrix &features, std::size_t seq_len);

/// Network input for every frame of `features`: rows as [T, cols] for the
/// frame-wise architectures, windows for the LSTM.
nn::Tensor ModelInputs(const Model &model, const FeatureMatrix &features);

/// One image per feature row, clamped to [0, 1]. `normalized` must already be
/// normalized with the training statistics.
ImageSequence PredictSequence(const Model &model, const FeatureMatrix &normalized,
                              std::size_t batch_size = 256);

}  // namespace vtinv

#endif  // VTINV_MODELS_H_
