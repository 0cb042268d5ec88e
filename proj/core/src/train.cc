// core/src/train.cc

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

#include "vtinv/train.h"

#include <cmath>
#include <numeric>

#include "vtinv/error.h"
#include "vtinv/optim.h"
#include "vtinv/random.h"

namespace vtinv {

using nn::Shape;
using nn::Tensor;

void TrainConfig::Validate() const {
  if (max_epochs < 1) Fail(ErrorKind::kValidation, "max_epochs must be >= 1");
  if (patience < 1) Fail(ErrorKind::kValidation, "patience must be >= 1");
  if (batch_size < 1) Fail(ErrorKind::kValidation, "batch_size must be >= 1");
  if (!(lr >= 0.0)) Fail(ErrorKind::kValidation, "lr must be non-negative");
  if (!(beta1 >= 0.0 && beta1 < 1.0 && beta2 >= 0.0 && beta2 < 1.0))
    Fail(ErrorKind::kValidation, "Adam betas must lie in [0, 1)");
  if (!(epsilon > 0.0)) Fail(ErrorKind::kValidation, "Adam epsilon must be positive");
}

Dataset MakeDataset(const Model &model, std::span<const FeatureMatrix> features,
                    std::span<const ImageSequence> targets) {
  if (features.size() != targets.size())
    Fail(ErrorKind::kShape, "feature and target lists differ in length");
  const std::size_t pixels = model.output_dim();
  const Shape sample = model.SampleShape();
  const std::size_t sample_size = nn::NumElements(sample);
  std::size_t total = 0;
  for (std::size_t u = 0; u < features.size(); ++u) {
    if (features[u].rows != targets[u].size())
      Fail(ErrorKind::kShape, "utterance " + std::to_string(u) + ": " +
                                  std::to_string(features[u].rows) + " feature rows vs " +
                                  std::to_string(targets[u].size()) + " frames");
    total += features[u].rows;
  }
  Shape in_shape{total};
  in_shape.insert(in_shape.end(), sample.begin(), sample.end());
  Dataset data{Tensor(in_shape), Tensor(Shape{total, pixels})};
  std::size_t row = 0;
  for (std::size_t u = 0; u < features.size(); ++u) {
    const Tensor inputs = ModelInputs(model, features[u]);
    std::copy(inputs.values().begin(), inputs.values().end(),
              data.inputs.data() + row * sample_size);
    for (std::size_t t = 0; t < targets[u].size(); ++t) {
      const Image &img = targets[u][t];
      if (img.pixels.size() != pixels)
        Fail(ErrorKind::kShape, "target image has " + std::to_string(img.pixels.size()) +
                                    " pixels, model outputs " + std::to_string(pixels));
      std::copy(img.pixels.begin(), img.pixels.end(), data.targets.data() + (row + t) * pixels);
    }
    row += features[u].rows;
  }
  return data;
}

bool EarlyStopping::Update(double val_loss) {
  ++epochs_;
  if (epochs_ == 1 || val_loss < best_loss_) {
    best_loss_ = val_loss;
    best_epoch_ = epochs_;
    since_best_ = 0;
  } else {
    ++since_best_;
  }
  return since_best_ >= patience_;
}

namespace {

// Rows `indices[first, first + n)` of a [N, ...] tensor.
Tensor Gather(const Tensor &src, const std::vector<std::size_t> &indices, std::size_t first,
              std::size_t n) {
  Shape shape = src.shape();
  const std::size_t row = nn::NumElements(src.shape()) / shape[0];
  shape[0] = n;
  Tensor out(shape);
  for (std::size_t i = 0; i < n; ++i) {
    const double *s = src.data() + indices[first + i] * row;
    std::copy(s, s + row, out.data() + i * row);
  }
  return out;
}

void CheckDataset(const Model &model, const Dataset &data, const char *name) {
  Shape expected{data.size()};
  const Shape sample = model.SampleShape();
  expected.insert(expected.end(), sample.begin(), sample.end());
  nn::CheckSameShape(data.inputs.shape(), expected, name);
  nn::CheckSameShape(data.targets.shape(), Shape{data.size(), model.output_dim()}, name);
}

}  // namespace

double DatasetLoss(const Model &model, const Dataset &data, std::size_t batch_size) {
  if (data.size() == 0) Fail(ErrorKind::kSize, "loss over an empty dataset");
  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), 0);
  double sum = 0.0;
  for (std::size_t first = 0; first < data.size(); first += batch_size) {
    const std::size_t n = std::min(batch_size, data.size() - first);
    const Tensor out = model.net.Forward(Gather(data.inputs, order, first, n));
    const Tensor target = Gather(data.targets, order, first, n);
    sum += nn::MseLoss(out, target).value * static_cast<double>(n);
  }
  return sum / static_cast<double>(data.size());
}

TrainHistory Train(Model *model, const Dataset &train, const Dataset &validation,
                   const TrainConfig &config, const TrainHooks &hooks) {
  config.Validate();
  if (train.size() == 0) Fail(ErrorKind::kSize, "empty training set");
  if (validation.size() == 0) Fail(ErrorKind::kSize, "empty validation set");
  CheckDataset(*model, train, "training set");
  CheckDataset(*model, validation, "validation set");

  nn::AdamState adam;
  adam.lr = config.lr;
  adam.beta1 = config.beta1;
  adam.beta2 = config.beta2;
  adam.epsilon = config.epsilon;
  const bool clip = model->arch == Architecture::kLstm && config.lstm_clip_norm > 0.0;

  Rng rng(config.seed);
  std::vector<std::size_t> order(train.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<nn::Tape> tapes;
  const std::vector<Tensor *> params = model->net.Parameters();
  std::vector<Tensor> best_params;

  TrainHistory history;
  EarlyStopping stopper(config.patience);
  for (int epoch = 1; epoch <= config.max_epochs; ++epoch) {
    if (config.shuffle) rng.Shuffle(std::span<std::size_t>(order));
    double loss_sum = 0.0;
    std::size_t batch = 0;
    for (std::size_t first = 0; first < train.size(); first += config.batch_size, ++batch) {
      const std::size_t n = std::min(config.batch_size, train.size() - first);
      const Tensor x = Gather(train.inputs, order, first, n);
      const Tensor y = Gather(train.targets, order, first, n);
      const Tensor out = model->net.Forward(x, &tapes);
      const nn::Loss loss = nn::MseLoss(out, y);
      if (!std::isfinite(loss.value))
        Fail(ErrorKind::kDivergence, "non-finite training loss at epoch " +
                                         std::to_string(epoch) + ", batch " +
                                         std::to_string(batch));
      std::vector<Tensor> grads = model->net.ZeroGrads();
      model->net.Backward(loss.grad, tapes, &grads);
      if (clip) nn::ClipGlobalNorm(&grads, config.lstm_clip_norm);
      nn::AdamStep(params, grads, &adam);
      loss_sum += loss.value * static_cast<double>(n);
      if (hooks.on_batch) hooks.on_batch({epoch, batch, n, loss.value});
    }
    const double train_loss = loss_sum / static_cast<double>(train.size());
    const double val_loss = DatasetLoss(*model, validation);
    if (!std::isfinite(val_loss))
      Fail(ErrorKind::kDivergence, "non-finite validation loss at epoch " + std::to_string(epoch));
    history.train_loss.push_back(train_loss);
    history.val_loss.push_back(val_loss);
    if (hooks.on_epoch) hooks.on_epoch(epoch, train_loss, val_loss);

    const bool stop = stopper.Update(val_loss);
    if (stopper.last_improved()) {
      best_params.clear();
      for (const Tensor *p : params) best_params.push_back(*p);
      if (!hooks.checkpoint.empty()) SaveModel(hooks.checkpoint, *model);
    }
    if (stop) {
      history.stopped_early = true;
      break;
    }
  }
  for (std::size_t i = 0; i < params.size(); ++i) *params[i] = best_params[i];
  history.best_epoch = stopper.best_epoch();
  return history;
}

}  // namespace vtinv
