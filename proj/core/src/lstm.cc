// core/src/lstm.cc

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

// LSTM cell, zero initial state:
//   z_t = x_t W + h_{t-1} U + b                  (packed i, f, g, o)
//   i = sig(z_i), f = sig(z_f), g = tanh(z_g), o = sig(z_o)
//   c_t = f * c_{t-1} + i * g
//   h_t = o * tanh(c_t)
// Backward walks t = T-1..0 carrying dh and dc from the future step.

#include <cmath>

#include "vtinv/error.h"
#include "vtinv/layers.h"

namespace vtinv::nn {
namespace {

double Sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// out[b, :] += a[b, :] M for a row-major [rows, n] block `a` with stride.
void AddMatMul(const double *a, std::size_t a_stride, std::size_t rows, std::size_t n,
               const Tensor &m, double *out, std::size_t out_stride) {
  const std::size_t cols = m.dim(1);
  for (std::size_t r = 0; r < rows; ++r) {
    const double *ar = a + r * a_stride;
    double *orow = out + r * out_stride;
    for (std::size_t i = 0; i < n; ++i) {
      const double av = ar[i];
      if (av == 0.0) continue;
      const double *mi = m.data() + i * cols;
      for (std::size_t j = 0; j < cols; ++j) orow[j] += av * mi[j];
    }
  }
}

}  // namespace

Tensor LstmForward(const Tensor &x, const Tensor &input_weights,
                   const Tensor &recurrent_weights, const Tensor &bias, LstmTrace *trace) {
  if (x.rank() != 3 || input_weights.rank() != 2 || recurrent_weights.rank() != 2)
    Fail(ErrorKind::kShape, "lstm expects [batch, time, n_in] input, got " + ShapeString(x.shape()));
  const std::size_t batch = x.dim(0), steps = x.dim(1), n_in = x.dim(2);
  const std::size_t hidden = recurrent_weights.dim(0), gates = 4 * hidden;
  if (steps == 0) Fail(ErrorKind::kShape, "lstm needs at least one time step");
  if (input_weights.shape() != Shape{n_in, gates} ||
      recurrent_weights.shape() != Shape{hidden, gates} || bias.shape() != Shape{gates})
    Fail(ErrorKind::kShape, "lstm parameters " + ShapeString(input_weights.shape()) + ", " +
                                ShapeString(recurrent_weights.shape()) + ", " +
                                ShapeString(bias.shape()) + " do not fit input " +
                                ShapeString(x.shape()));

  Tensor act(Shape{batch, steps, gates});
  Tensor cells(Shape{batch, steps, hidden});
  Tensor out(Shape{batch, steps, hidden});
  std::vector<double> z(batch * gates);
  for (std::size_t t = 0; t < steps; ++t) {
    for (std::size_t b = 0; b < batch; ++b)
      std::copy(bias.data(), bias.data() + gates, z.data() + b * gates);
    AddMatMul(x.data() + t * n_in, steps * n_in, batch, n_in, input_weights, z.data(), gates);
    if (t > 0)
      AddMatMul(out.data() + (t - 1) * hidden, steps * hidden, batch, hidden, recurrent_weights,
                z.data(), gates);
    for (std::size_t b = 0; b < batch; ++b) {
      const double *zb = z.data() + b * gates;
      double *ab = act.data() + (b * steps + t) * gates;
      double *cb = cells.data() + (b * steps + t) * hidden;
      double *hb = out.data() + (b * steps + t) * hidden;
      const double *c_prev = t > 0 ? cells.data() + (b * steps + t - 1) * hidden : nullptr;
      for (std::size_t j = 0; j < hidden; ++j) {
        const double i = Sigmoid(zb[kInputGate * hidden + j]);
        const double f = Sigmoid(zb[kForgetGate * hidden + j]);
        const double g = std::tanh(zb[kCellGate * hidden + j]);
        const double o = Sigmoid(zb[kOutputGate * hidden + j]);
        ab[kInputGate * hidden + j] = i;
        ab[kForgetGate * hidden + j] = f;
        ab[kCellGate * hidden + j] = g;
        ab[kOutputGate * hidden + j] = o;
        const double c = (c_prev ? f * c_prev[j] : 0.0) + i * g;
        cb[j] = c;
        hb[j] = o * std::tanh(c);
      }
    }
  }
  if (trace) {
    trace->gates = std::move(act);
    trace->cells = std::move(cells);
    trace->hidden = out;
  }
  return out;
}

LstmGrads LstmBackward(const Tensor &x, const Tensor &input_weights,
                       const Tensor &recurrent_weights, const LstmTrace &trace,
                       const Tensor &grad_out) {
  const std::size_t batch = x.dim(0), steps = x.dim(1), n_in = x.dim(2);
  const std::size_t hidden = recurrent_weights.dim(0), gates = 4 * hidden;
  CheckSameShape(grad_out.shape(), Shape{batch, steps, hidden}, "lstm backward");
  LstmGrads g{Tensor(x.shape()), Tensor(input_weights.shape()),
              Tensor(recurrent_weights.shape()), Tensor(Shape{gates})};

  std::vector<double> dh_next(batch * hidden, 0.0), dc_next(batch * hidden, 0.0);
  std::vector<double> dz(batch * gates);
  for (std::size_t t = steps; t-- > 0;) {
    for (std::size_t b = 0; b < batch; ++b) {
      const double *ab = trace.gates.data() + (b * steps + t) * gates;
      const double *cb = trace.cells.data() + (b * steps + t) * hidden;
      const double *c_prev = t > 0 ? trace.cells.data() + (b * steps + t - 1) * hidden : nullptr;
      const double *gb = grad_out.data() + (b * steps + t) * hidden;
      double *dzb = dz.data() + b * gates;
      for (std::size_t j = 0; j < hidden; ++j) {
        const double i = ab[kInputGate * hidden + j];
        const double f = ab[kForgetGate * hidden + j];
        const double gg = ab[kCellGate * hidden + j];
        const double o = ab[kOutputGate * hidden + j];
        const double tc = std::tanh(cb[j]);
        const double dh = gb[j] + dh_next[b * hidden + j];
        const double dc = dh * o * (1.0 - tc * tc) + dc_next[b * hidden + j];
        dzb[kInputGate * hidden + j] = dc * gg * i * (1.0 - i);
        dzb[kForgetGate * hidden + j] = c_prev ? dc * c_prev[j] * f * (1.0 - f) : 0.0;
        dzb[kCellGate * hidden + j] = dc * i * (1.0 - gg * gg);
        dzb[kOutputGate * hidden + j] = dh * tc * o * (1.0 - o);
        dc_next[b * hidden + j] = dc * f;
      }
    }
    // Parameter gradients and the gradient flowing to x_t and h_{t-1}.
    for (std::size_t b = 0; b < batch; ++b) {
      const double *dzb = dz.data() + b * gates;
      const double *xb = x.data() + (b * steps + t) * n_in;
      for (std::size_t k = 0; k < gates; ++k) g.bias[k] += dzb[k];
      for (std::size_t i = 0; i < n_in; ++i) {
        const double *wi = input_weights.data() + i * gates;
        double *gwi = g.input_weights.data() + i * gates;
        double acc = 0.0;
        for (std::size_t k = 0; k < gates; ++k) {
          acc += dzb[k] * wi[k];
          gwi[k] += xb[i] * dzb[k];
        }
        g.input[(b * steps + t) * n_in + i] = acc;
      }
      double *dhb = dh_next.data() + b * hidden;
      if (t == 0) {
        std::fill(dhb, dhb + hidden, 0.0);
        continue;
      }
      const double *h_prev = trace.hidden.data() + (b * steps + t - 1) * hidden;
      for (std::size_t i = 0; i < hidden; ++i) {
        const double *ui = recurrent_weights.data() + i * gates;
        double *gui = g.recurrent_weights.data() + i * gates;
        double acc = 0.0;
        for (std::size_t k = 0; k < gates; ++k) {
          acc += dzb[k] * ui[k];
          gui[k] += h_prev[i] * dzb[k];
        }
        dhb[i] = acc;
      }
    }
  }
  return g;
}

}  // namespace vtinv::nn
