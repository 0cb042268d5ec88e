// vtinv/train.h

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

#ifndef VTINV_TRAIN_H_
#define VTINV_TRAIN_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <span>
#include <vector>

#include "vtinv/models.h"

namespace vtinv {

struct TrainConfig {
  int max_epochs = 100;
  int patience = 5;
  std::size_t batch_size = 128;
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  std::uint64_t seed = 0;
  bool shuffle = true;
  /// Global gradient-norm clip, applied to LSTM models only; <= 0 disables.
  double lstm_clip_norm = 5.0;

  void Validate() const;
};

/// Input/target pairs. inputs: [N, ...sample shape], targets: [N, pixels].
struct Dataset {
  nn::Tensor inputs;
  nn::Tensor targets;
  std::size_t size() const { return inputs.rank() ? inputs.dim(0) : 0; }
};

/// Pairs every frame (FC-DNN, CNN) or every length-seq_len window ending at
/// a frame (LSTM) with that frame's [0, 1] target image. Features must be
/// normalized; each feature matrix must have as many rows as its sequence.
Dataset MakeDataset(const Model &model, std::span<const FeatureMatrix> features,
                    std::span<const ImageSequence> targets);

/// Patience rule on validation loss: an epoch improves only if its loss is
/// strictly below the best so far.
class EarlyStopping {
 public:
  explicit EarlyStopping(int patience) : patience_(patience) {}

  /// Records one epoch; returns true when training should stop.
  bool Update(double val_loss);

  int epochs() const { return epochs_; }
  int best_epoch() const { return best_epoch_; }  // 1-based, 0 before any epoch
  double best_loss() const { return best_loss_; }
  bool last_improved() const { return since_best_ == 0 && epochs_ > 0; }

 private:
  int patience_;
  int epochs_ = 0;
  int best_epoch_ = 0;
  int since_best_ = 0;
  double best_loss_ = 0.0;
};

struct TrainHistory {
  std::vector<double> train_loss;  // per epoch, mean over training pairs
  std::vector<double> val_loss;    // per epoch, full validation MSE
  int best_epoch = 0;              // 1-based
  bool stopped_early = false;
  bool operator==(const TrainHistory &) const = default;
};

struct BatchEvent {
  int epoch;            // 1-based
  std::size_t batch;    // 0-based within the epoch
  std::size_t batch_size;
  double loss;
};

struct TrainHooks {
  std::function<void(const BatchEvent &)> on_batch;
  std::function<void(int epoch, double train_loss, double val_loss)> on_epoch;
  /// When set, the model is saved here after every improving epoch, so the
  /// file always holds the best model so far.
  std::filesystem::path checkpoint;
};

/// Mini-batch Adam on MSE with early stopping; on return `model` holds the
/// parameters of the best validation epoch. The model must be initialized.
TrainHistory Train(Model *model, const Dataset &train, const Dataset &validation,
                   const TrainConfig &config, const TrainHooks &hooks = {});

/// MSE of the model over a dataset, evaluated in batches.
double DatasetLoss(const Model &model, const Dataset &data, std::size_t batch_size = 256);

// --- model container --------------------------------------------------------------

/// Text manifest (architecture, sizes, normalizer, layers, tensor directory)
/// terminated by an "end" line, followed by the little-endian f64 payload.
void SaveModel(const std::filesystem::path &path, const Model &model);

/// Throws kCorruption if the manifest and payload disagree.
Model LoadModel(const std::filesystem::path &path);

}  // namespace vtinv

#endif  // VTINV_TRAIN_H_
