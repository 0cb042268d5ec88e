// vtinv/optim.h

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

#ifndef VTINV_OPTIM_H_
#define VTINV_OPTIM_H_

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "vtinv/network.h"
#include "vtinv/tensor.h"

namespace vtinv::nn {

/// Adam with bias correction.
struct AdamState {
  std::size_t step = 0;
  std::vector<Tensor> m, v;  // created lazily on the first step
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

void AdamStep(std::span<Tensor *const> params, std::span<const Tensor> grads, AdamState *state);

/// Scales all gradients by max_norm / ||g|| when the global L2 norm exceeds
/// max_norm. Returns the norm before clipping.
double ClipGlobalNorm(std::vector<Tensor> *grads, double max_norm);

struct GradCheckOptions {
  double step = 1e-5;        // central-difference half width
  std::uint64_t seed = 1;    // projection used when no target is given
  const Tensor *target = nullptr;  // if set, the objective is MseLoss(out, target)
  bool check_input = true;
};

struct GradCheckResult {
  double max_rel_error = 0.0;
  std::string worst;  // "<param name>[index]" or "input[index]"
  std::size_t entries = 0;
};

/// Relative difference |a - n| / max(|a|, |n|, 1e-4); gradients smaller than
/// 1e-4 are effectively compared in absolute terms.
double RelativeError(double analytic, double numeric);

/// Compares Network::Backward with central differences of a scalar objective
/// (sum(out * R) for a fixed random R, or MSE against options.target) on every
/// parameter entry and, optionally, every input entry.
GradCheckResult GradCheck(Network &net, const Tensor &input, const GradCheckOptions &options = {});

}  // namespace vtinv::nn

#endif  // VTINV_OPTIM_H_
