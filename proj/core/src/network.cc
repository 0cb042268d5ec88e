// core/src/network.cc

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

#include "vtinv/network.h"

#include "vtinv/error.h"
#include "vtinv/random.h"

namespace vtinv::nn {

Network::Network(const std::vector<LayerSpec> &specs) {
  for (const auto &spec : specs) Add(MakeLayer(spec));
}

Network::Network(const Network &other) {
  for (const auto &layer : other.layers_) layers_.push_back(layer->Clone());
}

Network &Network::operator=(const Network &other) {
  if (this != &other) {
    layers_.clear();
    for (const auto &layer : other.layers_) layers_.push_back(layer->Clone());
  }
  return *this;
}

void Network::Add(std::unique_ptr<Layer> layer) { layers_.push_back(std::move(layer)); }

std::vector<LayerSpec> Network::specs() const {
  std::vector<LayerSpec> out;
  for (const auto &layer : layers_) out.push_back(layer->spec());
  return out;
}

Shape Network::OutputShape(const Shape &input) const {
  Shape shape = input;
  for (const auto &layer : layers_) shape = layer->OutputShape(shape);
  return shape;
}

void Network::Initialize(std::uint64_t seed) {
  Rng rng(seed);
  for (auto &layer : layers_) layer->Initialize(rng);
}

Tensor Network::Forward(const Tensor &x) const {
  Tensor h = x;
  for (const auto &layer : layers_) h = layer->Forward(h, nullptr);
  return h;
}

Tensor Network::Forward(const Tensor &x, std::vector<Tape> *tapes) const {
  tapes->assign(layers_.size(), Tape{});
  Tensor h = x;
  for (std::size_t i = 0; i < layers_.size(); ++i) h = layers_[i]->Forward(h, &(*tapes)[i]);
  return h;
}

Tensor Network::Backward(const Tensor &grad_out, const std::vector<Tape> &tapes,
                         std::vector<Tensor> *grads) const {
  if (tapes.size() != layers_.size())
    Fail(ErrorKind::kShape, "backward called without a matching forward tape");
  std::vector<std::size_t> offsets(layers_.size() + 1, 0);
  for (std::size_t i = 0; i < layers_.size(); ++i)
    offsets[i + 1] = offsets[i] + layers_[i]->params().size();
  if (grads->size() != offsets.back())
    Fail(ErrorKind::kShape, "gradient buffer holds " + std::to_string(grads->size()) +
                                " tensors, network has " + std::to_string(offsets.back()));
  Tensor g = grad_out;
  for (std::size_t i = layers_.size(); i-- > 0;) {
    std::span<Tensor> slot(grads->data() + offsets[i], offsets[i + 1] - offsets[i]);
    g = layers_[i]->Backward(g, tapes[i], slot);
  }
  return g;
}

std::vector<Tensor *> Network::Parameters() {
  std::vector<Tensor *> out;
  for (auto &layer : layers_)
    for (auto &p : layer->params()) out.push_back(&p);
  return out;
}

std::vector<const Tensor *> Network::Parameters() const {
  std::vector<const Tensor *> out;
  for (const auto &layer : layers_)
    for (const auto &p : layer->params()) out.push_back(&p);
  return out;
}

std::vector<std::string> Network::ParameterNames() const {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < layers_.size(); ++i)
    for (const auto &n : layers_[i]->param_names())
      names.push_back(std::to_string(i) + "." + LayerKindName(layers_[i]->spec().kind) + "." + n);
  return names;
}

std::vector<Tensor> Network::ZeroGrads() const {
  std::vector<Tensor> grads;
  for (const auto *p : Parameters()) grads.emplace_back(p->shape());
  return grads;
}

std::size_t Network::ParameterCount() const {
  std::size_t n = 0;
  for (const auto *p : Parameters()) n += p->size();
  return n;
}

}  // namespace vtinv::nn
