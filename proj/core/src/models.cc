// core/src/models.cc

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

#include "vtinv/models.h"

#include <algorithm>
#include <cmath>

#include "vtinv/error.h"

namespace vtinv {

using nn::LayerKind;
using nn::LayerSpec;
using nn::Shape;
using nn::Tensor;

Image ToUnitImage(const GrayImage &image) {
  Image out(image.width, image.height);
  for (std::size_t i = 0; i < image.pixels.size(); ++i) out.pixels[i] = image.pixels[i] / 255.0;
  return out;
}

ImageSequence ToUnitSequence(const std::vector<GrayImage> &frames) {
  ImageSequence seq;
  seq.reserve(frames.size());
  for (const auto &f : frames) seq.push_back(ToUnitImage(f));
  return seq;
}

GrayImage ToGrayImage(const Image &image) {
  GrayImage out(image.width, image.height);
  for (std::size_t i = 0; i < image.pixels.size(); ++i) {
    const double v = std::clamp(image.pixels[i], 0.0, 1.0);
    out.pixels[i] = static_cast<std::uint8_t>(std::lround(255.0 * v));
  }
  return out;
}

const char *ArchitectureName(Architecture arch) {
  switch (arch) {
    case Architecture::kFcDnn: return "fcdnn";
    case Architecture::kCnn: return "cnn";
    case Architecture::kLstm: return "lstm";
  }
  return "?";
}

Architecture ParseArchitecture(const std::string &name) {
  if (name == "fcdnn") return Architecture::kFcDnn;
  if (name == "cnn") return Architecture::kCnn;
  if (name == "lstm") return Architecture::kLstm;
  Fail(ErrorKind::kValidation, "unknown architecture '" + name + "' (fcdnn, cnn, lstm)");
}

std::span<const ArchSizeField> ArchSizeFields() {
  static constexpr ArchSizeField kFields[] = {
      {"input_dim", &ArchSizes::input_dim},
      {"image_size", &ArchSizes::image_size},
      {"fc_width", &ArchSizes::fc_width},
      {"fc_depth", &ArchSizes::fc_depth},
      {"cnn_dense", &ArchSizes::cnn_dense},
      {"cnn_filters", &ArchSizes::cnn_filters},
      {"lstm_fc_width", &ArchSizes::lstm_fc_width},
      {"lstm_fc_depth", &ArchSizes::lstm_fc_depth},
      {"lstm_hidden", &ArchSizes::lstm_hidden},
      {"lstm_layers", &ArchSizes::lstm_layers},
      {"seq_len", &ArchSizes::seq_len},
  };
  return kFields;
}

Shape Model::SampleShape() const {
  if (arch == Architecture::kLstm) return {sizes.seq_len, sizes.input_dim};
  return {sizes.input_dim};
}

namespace {

LayerSpec Dense(std::size_t in, std::size_t out) { return {LayerKind::kDense, in, out, {}}; }
LayerSpec Relu() { return {LayerKind::kRelu, 0, 0, {}}; }

void CheckPositive(std::size_t v, const char *name) {
  if (v == 0) Fail(ErrorKind::kValidation, std::string(name) + " must be positive");
}

Model Finish(Architecture arch, const ArchSizes &sizes, const std::vector<LayerSpec> &specs) {
  Model model{arch, sizes, nn::Network(specs), {}};
  Shape in{1};
  const Shape sample = model.SampleShape();
  in.insert(in.end(), sample.begin(), sample.end());
  const Shape out = model.net.OutputShape(in);
  if (out != Shape{1, model.output_dim()})
    Fail(ErrorKind::kShape, std::string(ArchitectureName(arch)) + " stack ends in " +
                                nn::ShapeString(out));
  return model;
}

}  // namespace

Model BuildFcDnn(const ArchSizes &sizes) {
  CheckPositive(sizes.fc_width, "fc_width");
  CheckPositive(sizes.fc_depth, "fc_depth");
  CheckPositive(sizes.image_size, "image_size");
  std::vector<LayerSpec> specs;
  std::size_t width = sizes.input_dim;
  for (std::size_t i = 0; i < sizes.fc_depth; ++i) {
    specs.push_back(Dense(width, sizes.fc_width));
    specs.push_back(Relu());
    width = sizes.fc_width;
  }
  specs.push_back(Dense(width, sizes.image_size * sizes.image_size));
  return Finish(Architecture::kFcDnn, sizes, specs);
}

Model BuildCnn(const ArchSizes &sizes) {
  CheckPositive(sizes.cnn_dense, "cnn_dense");
  CheckPositive(sizes.cnn_filters, "cnn_filters");
  if (sizes.image_size == 0 || sizes.image_size % 4 != 0)
    Fail(ErrorKind::kValidation, "CNN needs image_size divisible by 4");
  const std::size_t grid = sizes.image_size / 4;
  const std::size_t filters = sizes.cnn_filters;
  std::vector<LayerSpec> specs = {
      Dense(sizes.input_dim, sizes.cnn_dense),
      Relu(),
      Dense(sizes.cnn_dense, grid * grid * filters),
      Relu(),
      {LayerKind::kReshape, 0, 0, {grid, grid, filters}},
      {LayerKind::kUpsample2, 0, 0, {}},
      {LayerKind::kConv2d, filters, filters, {}},
      Relu(),
      {LayerKind::kUpsample2, 0, 0, {}},
      {LayerKind::kConv2d, filters, 1, {}},
      {LayerKind::kReshape, 0, 0, {sizes.image_size * sizes.image_size}},
  };
  return Finish(Architecture::kCnn, sizes, specs);
}

Model BuildLstm(const ArchSizes &sizes) {
  CheckPositive(sizes.lstm_fc_width, "lstm_fc_width");
  CheckPositive(sizes.lstm_fc_depth, "lstm_fc_depth");
  CheckPositive(sizes.lstm_hidden, "lstm_hidden");
  CheckPositive(sizes.lstm_layers, "lstm_layers");
  CheckPositive(sizes.seq_len, "seq_len");
  std::vector<LayerSpec> specs;
  std::size_t width = sizes.input_dim;
  for (std::size_t i = 0; i < sizes.lstm_fc_depth; ++i) {
    specs.push_back(Dense(width, sizes.lstm_fc_width));
    specs.push_back(Relu());
    width = sizes.lstm_fc_width;
  }
  for (std::size_t i = 0; i < sizes.lstm_layers; ++i) {
    specs.push_back({LayerKind::kLstm, width, sizes.lstm_hidden, {}});
    width = sizes.lstm_hidden;
  }
  specs.push_back({LayerKind::kLastStep, 0, 0, {}});
  specs.push_back(Dense(width, sizes.image_size * sizes.image_size));
  return Finish(Architecture::kLstm, sizes, specs);
}

Model BuildModel(Architecture arch, const ArchSizes &sizes) {
  switch (arch) {
    case Architecture::kFcDnn: return BuildFcDnn(sizes);
    case Architecture::kCnn: return BuildCnn(sizes);
    case Architecture::kLstm: return BuildLstm(sizes);
  }
  Fail(ErrorKind::kValidation, "unknown architecture");
}

std::size_t CountParams(const Model &model) { return model.net.ParameterCount(); }

Tensor MakeWindows(const FeatureMatrix &features, std::size_t seq_len) {
  const std::size_t rows = features.rows, cols = features.cols;
  Tensor windows(Shape{rows, seq_len, cols});
  for (std::size_t t = 0; t < rows; ++t)
    for (std::size_t s = 0; s < seq_len; ++s) {
      const long src = long(t) - long(seq_len - 1) + long(s);
      const auto row = features.row(static_cast<std::size_t>(std::max(src, 0L)));
      std::copy(row.begin(), row.end(), windows.data() + (t * seq_len + s) * cols);
    }
  return windows;
}

Tensor ModelInputs(const Model &model, const FeatureMatrix &features) {
  if (features.cols != model.sizes.input_dim)
    Fail(ErrorKind::kShape, "features have " + std::to_string(features.cols) +
                                " columns, model expects " +
                                std::to_string(model.sizes.input_dim));
  if (model.arch == Architecture::kLstm) return MakeWindows(features, model.sizes.seq_len);
  return Tensor(Shape{features.rows, features.cols}, features.data);
}

ImageSequence PredictSequence(const Model &model, const FeatureMatrix &normalized,
                              std::size_t batch_size) {
  const Tensor inputs = ModelInputs(model, normalized);
  const std::size_t rows = normalized.rows;
  const std::size_t sample = nn::NumElements(model.SampleShape());
  const int side = static_cast<int>(model.sizes.image_size);
  ImageSequence frames;
  frames.reserve(rows);
  batch_size = std::max<std::size_t>(batch_size, 1);
  for (std::size_t start = 0; start < rows; start += batch_size) {
    const std::size_t n = std::min(batch_size, rows - start);
    Shape shape{n};
    const Shape s = model.SampleShape();
    shape.insert(shape.end(), s.begin(), s.end());
    Tensor batch(shape, std::vector<double>(inputs.data() + start * sample,
                                            inputs.data() + (start + n) * sample));
    const Tensor out = model.net.Forward(batch);
    for (std::size_t i = 0; i < n; ++i) {
      Image img(side, side);
      for (std::size_t k = 0; k < img.pixels.size(); ++k)
        img.pixels[k] = std::clamp(out[i * img.pixels.size() + k], 0.0, 1.0);
      frames.push_back(std::move(img));
    }
  }
  return frames;
}

}  // namespace vtinv
