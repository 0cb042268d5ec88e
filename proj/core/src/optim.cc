// core/src/optim.cc

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

#include "vtinv/optim.h"

#include <cmath>

#include "vtinv/error.h"

namespace vtinv::nn {

void AdamStep(std::span<Tensor *const> params, std::span<const Tensor> grads, AdamState *state) {
  if (params.size() != grads.size())
    Fail(ErrorKind::kShape, "adam: " + std::to_string(params.size()) + " parameters but " +
                                std::to_string(grads.size()) + " gradients");
  for (std::size_t i = 0; i < params.size(); ++i)
    CheckSameShape(params[i]->shape(), grads[i].shape(), "adam gradient");
  if (state->m.empty()) {
    for (const Tensor *p : params) {
      state->m.emplace_back(p->shape());
      state->v.emplace_back(p->shape());
    }
  } else if (state->m.size() != params.size()) {
    Fail(ErrorKind::kShape, "adam state does not match the parameter list");
  }
  for (std::size_t i = 0; i < params.size(); ++i)
    CheckSameShape(params[i]->shape(), state->m[i].shape(), "adam moment");

  state->step += 1;
  const double t = static_cast<double>(state->step);
  const double correct1 = 1.0 - std::pow(state->beta1, t);
  const double correct2 = 1.0 - std::pow(state->beta2, t);
  for (std::size_t i = 0; i < params.size(); ++i) {
    Tensor &p = *params[i];
    Tensor &m = state->m[i];
    Tensor &v = state->v[i];
    const Tensor &g = grads[i];
    for (std::size_t k = 0; k < p.size(); ++k) {
      m[k] = state->beta1 * m[k] + (1.0 - state->beta1) * g[k];
      v[k] = state->beta2 * v[k] + (1.0 - state->beta2) * g[k] * g[k];
      const double m_hat = m[k] / correct1;
      const double v_hat = v[k] / correct2;
      p[k] -= state->lr * m_hat / (std::sqrt(v_hat) + state->epsilon);
    }
  }
}

double ClipGlobalNorm(std::vector<Tensor> *grads, double max_norm) {
  double sq = 0.0;
  for (const Tensor &g : *grads)
    for (double v : g.values()) sq += v * v;
  const double norm = std::sqrt(sq);
  if (max_norm > 0.0 && norm > max_norm) {
    const double scale = max_norm / norm;
    for (Tensor &g : *grads)
      for (double &v : g.values()) v *= scale;
  }
  return norm;
}

}  // namespace vtinv::nn
