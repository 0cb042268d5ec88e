// core/src/tensor.cc

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

#include "vtinv/tensor.h"

#include <algorithm>
#include <cmath>

#include "vtinv/error.h"

namespace vtinv::nn {

std::size_t NumElements(const Shape &shape) {
  std::size_t n = 1;
  for (std::size_t d : shape) n *= d;
  return n;
}

std::string ShapeString(const Shape &shape) {
  std::string s = "[";
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (i) s += ", ";
    s += std::to_string(shape[i]);
  }
  return s + "]";
}

Tensor::Tensor(Shape shape, double fill)
    : shape_(std::move(shape)), data_(NumElements(shape_), fill) {}

Tensor::Tensor(Shape shape, std::vector<double> values)
    : shape_(std::move(shape)), data_(std::move(values)) {
  if (NumElements(shape_) != data_.size())
    Fail(ErrorKind::kShape, "shape " + ShapeString(shape_) + " does not hold " +
                                std::to_string(data_.size()) + " values");
}

Tensor Tensor::Reshaped(Shape shape) const {
  if (NumElements(shape) != data_.size())
    Fail(ErrorKind::kShape, "cannot reshape " + ShapeString(shape_) + " to " + ShapeString(shape));
  return Tensor(std::move(shape), data_);
}

void Tensor::Fill(double value) { std::fill(data_.begin(), data_.end(), value); }

void CheckSameShape(const Shape &a, const Shape &b, const char *what) {
  if (a != b)
    Fail(ErrorKind::kShape, std::string(what) + ": " + ShapeString(a) + " vs " + ShapeString(b));
}

bool AllFinite(const Tensor &t) {
  return std::all_of(t.values().begin(), t.values().end(),
                     [](double v) { return std::isfinite(v); });
}

}  // namespace vtinv::nn
