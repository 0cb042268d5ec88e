// vtinv/layers.h

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

#ifndef VTINV_LAYERS_H_
#define VTINV_LAYERS_H_

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "vtinv/random.h"
#include "vtinv/tensor.h"

namespace vtinv::nn {

// ---------------------------------------------------------------------------
// Stateless operations. Images are NHWC; sequences are [batch, time, units].
// Every backward returns exact analytic gradients.
// ---------------------------------------------------------------------------

/// y = x W + b over the last axis of x (any leading axes are batch axes).
Tensor DenseForward(const Tensor &x, const Tensor &weights, const Tensor &bias);
struct DenseGrads {
  Tensor input, weights, bias;
};
DenseGrads DenseBackward(const Tensor &x, const Tensor &weights, const Tensor &grad_out);

Tensor ReluForward(const Tensor &x);
Tensor ReluBackward(const Tensor &x, const Tensor &grad_out);

/// 3x3 cross-correlation with one pixel of zero padding ("same" output size).
/// kernels: [3, 3, c_in, c_out], bias: [c_out].
Tensor Conv2dForward(const Tensor &x, const Tensor &kernels, const Tensor &bias);
struct Conv2dGrads {
  Tensor input, kernels, bias;
};
Conv2dGrads Conv2dBackward(const Tensor &x, const Tensor &kernels, const Tensor &grad_out);

/// 2x2 non-overlapping max; height and width must be even. Ties go to the
/// first element in row-major window order.
Tensor MaxPool2Forward(const Tensor &x);
Tensor MaxPool2Backward(const Tensor &x, const Tensor &grad_out);

/// Nearest-neighbour 2x replication along height and width.
Tensor Upsample2Forward(const Tensor &x);
Tensor Upsample2Backward(const Tensor &grad_out);

/// Gate order in the packed LSTM parameters.
enum LstmGate { kInputGate = 0, kForgetGate = 1, kCellGate = 2, kOutputGate = 3 };

/// Activations kept by LstmForward for backpropagation through time.
struct LstmTrace {
  Tensor gates;  // [batch, time, 4H], post-activation i, f, g, o
  Tensor cells;  // [batch, time, H]
  Tensor hidden; // [batch, time, H]
};

/// Standard LSTM over x [batch, time, n_in] from zero initial state.
/// input_weights [n_in, 4H], recurrent_weights [H, 4H], bias [4H].
Tensor LstmForward(const Tensor &x, const Tensor &input_weights,
                   const Tensor &recurrent_weights, const Tensor &bias,
                   LstmTrace *trace = nullptr);
struct LstmGrads {
  Tensor input, input_weights, recurrent_weights, bias;
};
LstmGrads LstmBackward(const Tensor &x, const Tensor &input_weights,
                       const Tensor &recurrent_weights, const LstmTrace &trace,
                       const Tensor &grad_out);

struct Loss {
  double value = 0.0;
  Tensor grad;  // d value / d pred
};

/// Mean over all elements of (pred - target)^2.
Loss MseLoss(const Tensor &pred, const Tensor &target);

// ---------------------------------------------------------------------------
// Layers: parameter holders wrapping the operations above.
// ---------------------------------------------------------------------------

enum class LayerKind { kDense, kRelu, kConv2d, kMaxPool2, kUpsample2, kReshape, kLstm, kLastStep };

const char *LayerKindName(LayerKind kind);

/// Architecture description of one layer. Unused fields stay zero/empty.
struct LayerSpec {
  LayerKind kind = LayerKind::kDense;
  std::size_t in = 0;   // dense n_in, conv c_in, lstm n_in
  std::size_t out = 0;  // dense n_out, conv c_out (filters), lstm hidden size
  Shape target;         // reshape: per-sample target shape
  bool operator==(const LayerSpec &) const = default;
};

std::string SpecString(const LayerSpec &spec);

/// What a layer keeps from forward for its backward pass.
struct Tape {
  Tensor input;
  LstmTrace lstm;
};

class Layer {
 public:
  virtual ~Layer() = default;

  virtual LayerSpec spec() const = 0;
  virtual std::unique_ptr<Layer> Clone() const = 0;

  /// Output shape (with batch axes) for an input of shape `in`; throws kShape
  /// if the layer cannot consume it.
  virtual Shape OutputShape(const Shape &in) const = 0;

  /// `tape` may be null for inference.
  virtual Tensor Forward(const Tensor &x, Tape *tape) const = 0;

  /// Returns the input gradient and adds parameter gradients into
  /// `param_grads` (one tensor per parameter, in params() order).
  virtual Tensor Backward(const Tensor &grad_out, const Tape &tape,
                          std::span<Tensor> param_grads) const = 0;

  /// Glorot-uniform weights, zero biases (LSTM forget gate bias 1).
  virtual void Initialize(Rng &) {}

  std::vector<Tensor> &params() { return params_; }
  const std::vector<Tensor> &params() const { return params_; }
  const std::vector<std::string> &param_names() const { return param_names_; }

 protected:
  std::vector<Tensor> params_;
  std::vector<std::string> param_names_;
};

std::unique_ptr<Layer> MakeLayer(const LayerSpec &spec);

/// Uniform in [-limit, limit], limit = sqrt(6 / (fan_in + fan_out)).
void GlorotUniform(Tensor *t, std::size_t fan_in, std::size_t fan_out, Rng &rng);

}  // namespace vtinv::nn

#endif  // VTINV_LAYERS_H_
