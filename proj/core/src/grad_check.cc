// core/src/grad_check.cc

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

#include <algorithm>
#include <cmath>

#include "vtinv/error.h"
#include "vtinv/optim.h"
#include "vtinv/random.h"

namespace vtinv::nn {

double RelativeError(double analytic, double numeric) {
  const double scale = std::max({std::abs(analytic), std::abs(numeric), 1e-4});
  return std::abs(analytic - numeric) / scale;
}

GradCheckResult GradCheck(Network &net, const Tensor &input, const GradCheckOptions &options) {
  const Shape out_shape = net.OutputShape(input.shape());
  Tensor projection(out_shape);
  if (options.target) {
    CheckSameShape(options.target->shape(), out_shape, "grad check target");
  } else {
    Rng rng(options.seed);
    for (double &v : projection.values()) v = rng.Uniform(-1.0, 1.0);
  }

  auto objective = [&](const Tensor &x) {
    const Tensor out = net.Forward(x);
    if (options.target) return MseLoss(out, *options.target).value;
    double s = 0.0;
    for (std::size_t i = 0; i < out.size(); ++i) s += out[i] * projection[i];
    return s;
  };

  std::vector<Tape> tapes;
  const Tensor out = net.Forward(input, &tapes);
  const Tensor upstream = options.target ? MseLoss(out, *options.target).grad : projection;
  std::vector<Tensor> grads = net.ZeroGrads();
  const Tensor input_grad = net.Backward(upstream, tapes, &grads);

  GradCheckResult result;
  auto record = [&](double analytic, double numeric, const std::string &where) {
    const double err = RelativeError(analytic, numeric);
    ++result.entries;
    if (err > result.max_rel_error || !std::isfinite(err)) {
      result.max_rel_error = std::isfinite(err) ? err : INFINITY;
      result.worst = where;
    }
  };

  const double h = options.step;
  const std::vector<Tensor *> params = net.Parameters();
  const std::vector<std::string> names = net.ParameterNames();
  for (std::size_t p = 0; p < params.size(); ++p) {
    Tensor &param = *params[p];
    for (std::size_t k = 0; k < param.size(); ++k) {
      const double saved = param[k];
      param[k] = saved + h;
      const double plus = objective(input);
      param[k] = saved - h;
      const double minus = objective(input);
      param[k] = saved;
      record(grads[p][k], (plus - minus) / (2.0 * h),
             names[p] + "[" + std::to_string(k) + "]");
    }
  }
  if (options.check_input) {
    Tensor x = input;
    for (std::size_t k = 0; k < x.size(); ++k) {
      const double saved = x[k];
      x[k] = saved + h;
      const double plus = objective(x);
      x[k] = saved - h;
      const double minus = objective(x);
      x[k] = saved;
      record(input_grad[k], (plus - minus) / (2.0 * h), "input[" + std::to_string(k) + "]");
    }
  }
  return result;
}

}  // namespace vtinv::nn
