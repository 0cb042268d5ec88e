// vtinv/network.h

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

#ifndef VTINV_NETWORK_H_
#define VTINV_NETWORK_H_

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "vtinv/layers.h"
#include "vtinv/tensor.h"

namespace vtinv::nn {

/// A feed-forward stack of layers. Copying deep-copies all parameters.
class Network {
 public:
  Network() = default;
  explicit Network(const std::vector<LayerSpec> &specs);
  Network(const Network &other);
  Network &operator=(const Network &other);
  Network(Network &&) = default;
  Network &operator=(Network &&) = default;

  void Add(std::unique_ptr<Layer> layer);
  std::size_t num_layers() const { return layers_.size(); }
  const Layer &layer(std::size_t i) const { return *layers_[i]; }
  Layer &layer(std::size_t i) { return *layers_[i]; }
  std::vector<LayerSpec> specs() const;

  /// Throws kShape unless the stack composes for the given input shape.
  Shape OutputShape(const Shape &input) const;

  void Initialize(std::uint64_t seed);

  /// Inference pass; const, so concurrent calls are safe.
  Tensor Forward(const Tensor &x) const;

  /// Training pass that records what Backward needs.
  Tensor Forward(const Tensor &x, std::vector<Tape> *tapes) const;

  /// Adds parameter gradients into `grads` (shaped like Parameters()) and
  /// returns the gradient with respect to the network input.
  Tensor Backward(const Tensor &grad_out, const std::vector<Tape> &tapes,
                  std::vector<Tensor> *grads) const;

  /// Flat views over every parameter tensor, layer by layer.
  std::vector<Tensor *> Parameters();
  std::vector<const Tensor *> Parameters() const;
  /// "<layer index>.<kind>.<param>", e.g. "0.dense.weight".
  std::vector<std::string> ParameterNames() const;
  std::vector<Tensor> ZeroGrads() const;
  std::size_t ParameterCount() const;

 private:
  std::vector<std::unique_ptr<Layer>> layers_;
};

}  // namespace vtinv::nn

#endif  // VTINV_NETWORK_H_
