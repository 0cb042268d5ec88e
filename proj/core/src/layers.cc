// core/src/layers.cc

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

#include "vtinv/layers.h"

#include <algorithm>
#include <cmath>

#include "vtinv/error.h"

namespace vtinv::nn {
namespace {

void CheckRank(const Tensor &t, std::size_t rank, const char *what) {
  if (t.rank() != rank)
    Fail(ErrorKind::kShape, std::string(what) + " expects rank " + std::to_string(rank) +
                                ", got " + ShapeString(t.shape()));
}

std::size_t LeadingSize(const Shape &shape) {
  std::size_t n = 1;
  for (std::size_t i = 0; i + 1 < shape.size(); ++i) n *= shape[i];
  return n;
}

}  // namespace

// --- dense -------------------------------------------------------------------

Tensor DenseForward(const Tensor &x, const Tensor &weights, const Tensor &bias) {
  CheckRank(weights, 2, "dense weights");
  const std::size_t n_in = weights.dim(0), n_out = weights.dim(1);
  if (x.rank() < 1 || x.shape().back() != n_in || bias.shape() != Shape{n_out})
    Fail(ErrorKind::kShape, "dense: input " + ShapeString(x.shape()) + ", weights " +
                                ShapeString(weights.shape()) + ", bias " +
                                ShapeString(bias.shape()));
  Shape out_shape = x.shape();
  out_shape.back() = n_out;
  Tensor y(out_shape);
  const std::size_t rows = LeadingSize(x.shape());
  const double *w = weights.data();
  for (std::size_t r = 0; r < rows; ++r) {
    double *yr = y.data() + r * n_out;
    const double *xr = x.data() + r * n_in;
    std::copy(bias.data(), bias.data() + n_out, yr);
    for (std::size_t i = 0; i < n_in; ++i) {
      const double xi = xr[i];
      if (xi == 0.0) continue;
      const double *wi = w + i * n_out;
      for (std::size_t o = 0; o < n_out; ++o) yr[o] += xi * wi[o];
    }
  }
  return y;
}

DenseGrads DenseBackward(const Tensor &x, const Tensor &weights, const Tensor &grad_out) {
  const std::size_t n_in = weights.dim(0), n_out = weights.dim(1);
  Shape expected = x.shape();
  expected.back() = n_out;
  CheckSameShape(grad_out.shape(), expected, "dense backward");
  DenseGrads g{Tensor(x.shape()), Tensor(weights.shape()), Tensor(Shape{n_out})};
  const std::size_t rows = LeadingSize(x.shape());
  for (std::size_t r = 0; r < rows; ++r) {
    const double *gr = grad_out.data() + r * n_out;
    const double *xr = x.data() + r * n_in;
    double *gxr = g.input.data() + r * n_in;
    for (std::size_t o = 0; o < n_out; ++o) g.bias[o] += gr[o];
    for (std::size_t i = 0; i < n_in; ++i) {
      const double *wi = weights.data() + i * n_out;
      double *gwi = g.weights.data() + i * n_out;
      const double xi = xr[i];
      double acc = 0.0;
      for (std::size_t o = 0; o < n_out; ++o) {
        acc += gr[o] * wi[o];
        gwi[o] += xi * gr[o];
      }
      gxr[i] = acc;
    }
  }
  return g;
}

// --- relu --------------------------------------------------------------------

Tensor ReluForward(const Tensor &x) {
  Tensor y = x;
  for (double &v : y.values()) v = v < 0.0 ? 0.0 : v;  // NaN passes through
  return y;
}

Tensor ReluBackward(const Tensor &x, const Tensor &grad_out) {
  CheckSameShape(grad_out.shape(), x.shape(), "relu backward");
  Tensor g = grad_out;
  for (std::size_t i = 0; i < g.size(); ++i)
    if (!(x[i] > 0.0)) g[i] = 0.0;
  return g;
}

// --- conv2d ------------------------------------------------------------------

Tensor Conv2dForward(const Tensor &x, const Tensor &kernels, const Tensor &bias) {
  CheckRank(x, 4, "conv2d input");
  CheckRank(kernels, 4, "conv2d kernels");
  const std::size_t batch = x.dim(0), h = x.dim(1), w = x.dim(2), c_in = x.dim(3);
  if (kernels.dim(0) != 3 || kernels.dim(1) != 3 || kernels.dim(2) != c_in ||
      bias.shape() != Shape{kernels.dim(3)})
    Fail(ErrorKind::kShape, "conv2d: input " + ShapeString(x.shape()) + ", kernels " +
                                ShapeString(kernels.shape()) + ", bias " +
                                ShapeString(bias.shape()));
  const std::size_t c_out = kernels.dim(3);
  Tensor y(Shape{batch, h, w, c_out});
  for (std::size_t b = 0; b < batch; ++b)
    for (std::size_t r = 0; r < h; ++r)
      for (std::size_t c = 0; c < w; ++c) {
        double *yp = y.data() + ((b * h + r) * w + c) * c_out;
        std::copy(bias.data(), bias.data() + c_out, yp);
        for (int kr = 0; kr < 3; ++kr) {
          const long rr = long(r) + kr - 1;
          if (rr < 0 || rr >= long(h)) continue;
          for (int kc = 0; kc < 3; ++kc) {
            const long cc = long(c) + kc - 1;
            if (cc < 0 || cc >= long(w)) continue;
            const double *xp = x.data() + ((b * h + rr) * w + cc) * c_in;
            const double *kp = kernels.data() + (kr * 3 + kc) * c_in * c_out;
            for (std::size_t ci = 0; ci < c_in; ++ci) {
              const double xv = xp[ci];
              const double *kk = kp + ci * c_out;
              for (std::size_t co = 0; co < c_out; ++co) yp[co] += xv * kk[co];
            }
          }
        }
      }
  return y;
}

Conv2dGrads Conv2dBackward(const Tensor &x, const Tensor &kernels, const Tensor &grad_out) {
  const std::size_t batch = x.dim(0), h = x.dim(1), w = x.dim(2), c_in = x.dim(3);
  const std::size_t c_out = kernels.dim(3);
  CheckSameShape(grad_out.shape(), Shape{batch, h, w, c_out}, "conv2d backward");
  Conv2dGrads g{Tensor(x.shape()), Tensor(kernels.shape()), Tensor(Shape{c_out})};
  for (std::size_t b = 0; b < batch; ++b)
    for (std::size_t r = 0; r < h; ++r)
      for (std::size_t c = 0; c < w; ++c) {
        const double *gp = grad_out.data() + ((b * h + r) * w + c) * c_out;
        for (std::size_t co = 0; co < c_out; ++co) g.bias[co] += gp[co];
        for (int kr = 0; kr < 3; ++kr) {
          const long rr = long(r) + kr - 1;
          if (rr < 0 || rr >= long(h)) continue;
          for (int kc = 0; kc < 3; ++kc) {
            const long cc = long(c) + kc - 1;
            if (cc < 0 || cc >= long(w)) continue;
            const std::size_t x_off = ((b * h + rr) * w + cc) * c_in;
            const std::size_t k_off = (kr * 3 + kc) * c_in * c_out;
            for (std::size_t ci = 0; ci < c_in; ++ci) {
              const double xv = x[x_off + ci];
              const double *kk = kernels.data() + k_off + ci * c_out;
              double *gk = g.kernels.data() + k_off + ci * c_out;
              double acc = 0.0;
              for (std::size_t co = 0; co < c_out; ++co) {
                acc += gp[co] * kk[co];
                gk[co] += xv * gp[co];
              }
              g.input[x_off + ci] += acc;
            }
          }
        }
      }
  return g;
}

// --- maxpool2 / upsample2 ----------------------------------------------------

Tensor MaxPool2Forward(const Tensor &x) {
  CheckRank(x, 4, "maxpool2 input");
  const std::size_t batch = x.dim(0), h = x.dim(1), w = x.dim(2), ch = x.dim(3);
  if (h % 2 != 0 || w % 2 != 0)
    Fail(ErrorKind::kShape, "maxpool2 needs even height and width, got " + ShapeString(x.shape()));
  Tensor y(Shape{batch, h / 2, w / 2, ch});
  for (std::size_t b = 0; b < batch; ++b)
    for (std::size_t r = 0; r < h / 2; ++r)
      for (std::size_t c = 0; c < w / 2; ++c)
        for (std::size_t k = 0; k < ch; ++k) {
          double best = x[((b * h + 2 * r) * w + 2 * c) * ch + k];
          for (int dr = 0; dr < 2; ++dr)
            for (int dc = 0; dc < 2; ++dc)
              best = std::max(best, x[((b * h + 2 * r + dr) * w + 2 * c + dc) * ch + k]);
          y[((b * (h / 2) + r) * (w / 2) + c) * ch + k] = best;
        }
  return y;
}

Tensor MaxPool2Backward(const Tensor &x, const Tensor &grad_out) {
  const std::size_t batch = x.dim(0), h = x.dim(1), w = x.dim(2), ch = x.dim(3);
  CheckSameShape(grad_out.shape(), Shape{batch, h / 2, w / 2, ch}, "maxpool2 backward");
  Tensor g(x.shape());
  for (std::size_t b = 0; b < batch; ++b)
    for (std::size_t r = 0; r < h / 2; ++r)
      for (std::size_t c = 0; c < w / 2; ++c)
        for (std::size_t k = 0; k < ch; ++k) {
          std::size_t arg = ((b * h + 2 * r) * w + 2 * c) * ch + k;
          for (int dr = 0; dr < 2; ++dr)
            for (int dc = 0; dc < 2; ++dc) {
              const std::size_t idx = ((b * h + 2 * r + dr) * w + 2 * c + dc) * ch + k;
              if (x[idx] > x[arg]) arg = idx;
            }
          g[arg] += grad_out[((b * (h / 2) + r) * (w / 2) + c) * ch + k];
        }
  return g;
}

Tensor Upsample2Forward(const Tensor &x) {
  CheckRank(x, 4, "upsample2 input");
  const std::size_t batch = x.dim(0), h = x.dim(1), w = x.dim(2), ch = x.dim(3);
  Tensor y(Shape{batch, 2 * h, 2 * w, ch});
  for (std::size_t b = 0; b < batch; ++b)
    for (std::size_t r = 0; r < 2 * h; ++r)
      for (std::size_t c = 0; c < 2 * w; ++c) {
        const double *src = x.data() + ((b * h + r / 2) * w + c / 2) * ch;
        std::copy(src, src + ch, y.data() + ((b * 2 * h + r) * 2 * w + c) * ch);
      }
  return y;
}

Tensor Upsample2Backward(const Tensor &grad_out) {
  CheckRank(grad_out, 4, "upsample2 backward");
  const std::size_t batch = grad_out.dim(0), h2 = grad_out.dim(1), w2 = grad_out.dim(2),
                    ch = grad_out.dim(3);
  if (h2 % 2 != 0 || w2 % 2 != 0)
    Fail(ErrorKind::kShape, "upsample2 backward got odd extents " + ShapeString(grad_out.shape()));
  const std::size_t h = h2 / 2, w = w2 / 2;
  Tensor g(Shape{batch, h, w, ch});
  for (std::size_t b = 0; b < batch; ++b)
    for (std::size_t r = 0; r < h2; ++r)
      for (std::size_t c = 0; c < w2; ++c) {
        const double *src = grad_out.data() + ((b * h2 + r) * w2 + c) * ch;
        double *dst = g.data() + ((b * h + r / 2) * w + c / 2) * ch;
        for (std::size_t k = 0; k < ch; ++k) dst[k] += src[k];
      }
  return g;
}

// --- loss --------------------------------------------------------------------

Loss MseLoss(const Tensor &pred, const Tensor &target) {
  CheckSameShape(pred.shape(), target.shape(), "mse loss");
  if (pred.size() == 0) Fail(ErrorKind::kSize, "mse loss of an empty tensor");
  Loss loss{0.0, Tensor(pred.shape())};
  const double n = static_cast<double>(pred.size());
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const double d = pred[i] - target[i];
    loss.value += d * d;
    loss.grad[i] = 2.0 * d / n;
  }
  loss.value /= n;
  return loss;
}

// --- layer classes -------------------------------------------------------------

const char *LayerKindName(LayerKind kind) {
  switch (kind) {
    case LayerKind::kDense: return "dense";
    case LayerKind::kRelu: return "relu";
    case LayerKind::kConv2d: return "conv2d";
    case LayerKind::kMaxPool2: return "maxpool2";
    case LayerKind::kUpsample2: return "upsample2";
    case LayerKind::kReshape: return "reshape";
    case LayerKind::kLstm: return "lstm";
    case LayerKind::kLastStep: return "last_step";
  }
  return "?";
}

std::string SpecString(const LayerSpec &spec) {
  std::string s = LayerKindName(spec.kind);
  switch (spec.kind) {
    case LayerKind::kDense:
    case LayerKind::kConv2d:
    case LayerKind::kLstm:
      s += " " + std::to_string(spec.in) + " " + std::to_string(spec.out);
      break;
    case LayerKind::kReshape:
      for (std::size_t d : spec.target) s += " " + std::to_string(d);
      break;
    default:
      break;
  }
  return s;
}

void GlorotUniform(Tensor *t, std::size_t fan_in, std::size_t fan_out, Rng &rng) {
  const double limit = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
  for (double &v : t->values()) v = rng.Uniform(-limit, limit);
}

namespace {

class DenseLayer : public Layer {
 public:
  DenseLayer(std::size_t n_in, std::size_t n_out) {
    params_ = {Tensor(Shape{n_in, n_out}), Tensor(Shape{n_out})};
    param_names_ = {"weight", "bias"};
  }
  LayerSpec spec() const override {
    return {LayerKind::kDense, params_[0].dim(0), params_[0].dim(1), {}};
  }
  std::unique_ptr<Layer> Clone() const override { return std::make_unique<DenseLayer>(*this); }
  Shape OutputShape(const Shape &in) const override {
    if (in.empty() || in.back() != params_[0].dim(0))
      Fail(ErrorKind::kShape, "dense " + SpecString(spec()) + " cannot take " + ShapeString(in));
    Shape out = in;
    out.back() = params_[0].dim(1);
    return out;
  }
  Tensor Forward(const Tensor &x, Tape *tape) const override {
    if (tape) tape->input = x;
    return DenseForward(x, params_[0], params_[1]);
  }
  Tensor Backward(const Tensor &grad_out, const Tape &tape,
                  std::span<Tensor> param_grads) const override {
    DenseGrads g = DenseBackward(tape.input, params_[0], grad_out);
    Accumulate(&param_grads[0], g.weights);
    Accumulate(&param_grads[1], g.bias);
    return std::move(g.input);
  }
  void Initialize(Rng &rng) override {
    GlorotUniform(&params_[0], params_[0].dim(0), params_[0].dim(1), rng);
    params_[1].Fill(0.0);
  }

  static void Accumulate(Tensor *dst, const Tensor &src) {
    for (std::size_t i = 0; i < src.size(); ++i) (*dst)[i] += src[i];
  }
};

class ReluLayer : public Layer {
 public:
  LayerSpec spec() const override { return {LayerKind::kRelu, 0, 0, {}}; }
  std::unique_ptr<Layer> Clone() const override { return std::make_unique<ReluLayer>(*this); }
  Shape OutputShape(const Shape &in) const override { return in; }
  Tensor Forward(const Tensor &x, Tape *tape) const override {
    if (tape) tape->input = x;
    return ReluForward(x);
  }
  Tensor Backward(const Tensor &grad_out, const Tape &tape, std::span<Tensor>) const override {
    return ReluBackward(tape.input, grad_out);
  }
};

class Conv2dLayer : public Layer {
 public:
  Conv2dLayer(std::size_t c_in, std::size_t c_out) {
    params_ = {Tensor(Shape{3, 3, c_in, c_out}), Tensor(Shape{c_out})};
    param_names_ = {"kernel", "bias"};
  }
  LayerSpec spec() const override {
    return {LayerKind::kConv2d, params_[0].dim(2), params_[0].dim(3), {}};
  }
  std::unique_ptr<Layer> Clone() const override { return std::make_unique<Conv2dLayer>(*this); }
  Shape OutputShape(const Shape &in) const override {
    if (in.size() != 4 || in[3] != params_[0].dim(2))
      Fail(ErrorKind::kShape, "conv2d " + SpecString(spec()) + " cannot take " + ShapeString(in));
    return {in[0], in[1], in[2], params_[0].dim(3)};
  }
  Tensor Forward(const Tensor &x, Tape *tape) const override {
    if (tape) tape->input = x;
    return Conv2dForward(x, params_[0], params_[1]);
  }
  Tensor Backward(const Tensor &grad_out, const Tape &tape,
                  std::span<Tensor> param_grads) const override {
    Conv2dGrads g = Conv2dBackward(tape.input, params_[0], grad_out);
    DenseLayer::Accumulate(&param_grads[0], g.kernels);
    DenseLayer::Accumulate(&param_grads[1], g.bias);
    return std::move(g.input);
  }
  void Initialize(Rng &rng) override {
    GlorotUniform(&params_[0], 9 * params_[0].dim(2), 9 * params_[0].dim(3), rng);
    params_[1].Fill(0.0);
  }
};

class MaxPool2Layer : public Layer {
 public:
  LayerSpec spec() const override { return {LayerKind::kMaxPool2, 0, 0, {}}; }
  std::unique_ptr<Layer> Clone() const override { return std::make_unique<MaxPool2Layer>(*this); }
  Shape OutputShape(const Shape &in) const override {
    if (in.size() != 4 || in[1] % 2 || in[2] % 2)
      Fail(ErrorKind::kShape, "maxpool2 cannot take " + ShapeString(in));
    return {in[0], in[1] / 2, in[2] / 2, in[3]};
  }
  Tensor Forward(const Tensor &x, Tape *tape) const override {
    if (tape) tape->input = x;
    return MaxPool2Forward(x);
  }
  Tensor Backward(const Tensor &grad_out, const Tape &tape, std::span<Tensor>) const override {
    return MaxPool2Backward(tape.input, grad_out);
  }
};

class Upsample2Layer : public Layer {
 public:
  LayerSpec spec() const override { return {LayerKind::kUpsample2, 0, 0, {}}; }
  std::unique_ptr<Layer> Clone() const override { return std::make_unique<Upsample2Layer>(*this); }
  Shape OutputShape(const Shape &in) const override {
    if (in.size() != 4) Fail(ErrorKind::kShape, "upsample2 cannot take " + ShapeString(in));
    return {in[0], 2 * in[1], 2 * in[2], in[3]};
  }
  Tensor Forward(const Tensor &x, Tape *) const override { return Upsample2Forward(x); }
  Tensor Backward(const Tensor &grad_out, const Tape &, std::span<Tensor>) const override {
    return Upsample2Backward(grad_out);
  }
};

// Reshapes everything after the batch axis.
class ReshapeLayer : public Layer {
 public:
  explicit ReshapeLayer(Shape target) : target_(std::move(target)) {}
  LayerSpec spec() const override { return {LayerKind::kReshape, 0, 0, target_}; }
  std::unique_ptr<Layer> Clone() const override { return std::make_unique<ReshapeLayer>(*this); }
  Shape OutputShape(const Shape &in) const override {
    if (in.empty() || NumElements(in) / in[0] != NumElements(target_))
      Fail(ErrorKind::kShape, "reshape to " + ShapeString(target_) + " cannot take " +
                                  ShapeString(in));
    Shape out{in[0]};
    out.insert(out.end(), target_.begin(), target_.end());
    return out;
  }
  Tensor Forward(const Tensor &x, Tape *tape) const override {
    if (tape) tape->input = Tensor(x.shape());  // only the shape is needed
    return x.Reshaped(OutputShape(x.shape()));
  }
  Tensor Backward(const Tensor &grad_out, const Tape &tape, std::span<Tensor>) const override {
    return grad_out.Reshaped(tape.input.shape());
  }

 private:
  Shape target_;
};

class LstmLayer : public Layer {
 public:
  LstmLayer(std::size_t n_in, std::size_t hidden) {
    params_ = {Tensor(Shape{n_in, 4 * hidden}), Tensor(Shape{hidden, 4 * hidden}),
               Tensor(Shape{4 * hidden})};
    param_names_ = {"input_weight", "recurrent_weight", "bias"};
  }
  LayerSpec spec() const override {
    return {LayerKind::kLstm, params_[0].dim(0), params_[1].dim(0), {}};
  }
  std::unique_ptr<Layer> Clone() const override { return std::make_unique<LstmLayer>(*this); }
  Shape OutputShape(const Shape &in) const override {
    if (in.size() != 3 || in[2] != params_[0].dim(0) || in[1] == 0)
      Fail(ErrorKind::kShape, "lstm " + SpecString(spec()) + " cannot take " + ShapeString(in));
    return {in[0], in[1], params_[1].dim(0)};
  }
  Tensor Forward(const Tensor &x, Tape *tape) const override {
    if (!tape) return LstmForward(x, params_[0], params_[1], params_[2]);
    tape->input = x;
    return LstmForward(x, params_[0], params_[1], params_[2], &tape->lstm);
  }
  Tensor Backward(const Tensor &grad_out, const Tape &tape,
                  std::span<Tensor> param_grads) const override {
    LstmGrads g = LstmBackward(tape.input, params_[0], params_[1], tape.lstm, grad_out);
    DenseLayer::Accumulate(&param_grads[0], g.input_weights);
    DenseLayer::Accumulate(&param_grads[1], g.recurrent_weights);
    DenseLayer::Accumulate(&param_grads[2], g.bias);
    return std::move(g.input);
  }
  void Initialize(Rng &rng) override {
    const std::size_t hidden = params_[1].dim(0);
    GlorotUniform(&params_[0], params_[0].dim(0), 4 * hidden, rng);
    GlorotUniform(&params_[1], hidden, 4 * hidden, rng);
    params_[2].Fill(0.0);
    for (std::size_t j = 0; j < hidden; ++j) params_[2][kForgetGate * hidden + j] = 1.0;
  }
};

// [batch, time, units] -> [batch, units] at the final time step.
class LastStepLayer : public Layer {
 public:
  LayerSpec spec() const override { return {LayerKind::kLastStep, 0, 0, {}}; }
  std::unique_ptr<Layer> Clone() const override { return std::make_unique<LastStepLayer>(*this); }
  Shape OutputShape(const Shape &in) const override {
    if (in.size() != 3 || in[1] == 0)
      Fail(ErrorKind::kShape, "last_step cannot take " + ShapeString(in));
    return {in[0], in[2]};
  }
  Tensor Forward(const Tensor &x, Tape *tape) const override {
    const Shape out_shape = OutputShape(x.shape());
    if (tape) tape->input = Tensor(x.shape());
    const std::size_t batch = x.dim(0), steps = x.dim(1), units = x.dim(2);
    Tensor y(out_shape);
    for (std::size_t b = 0; b < batch; ++b) {
      const double *src = x.data() + (b * steps + steps - 1) * units;
      std::copy(src, src + units, y.data() + b * units);
    }
    return y;
  }
  Tensor Backward(const Tensor &grad_out, const Tape &tape, std::span<Tensor>) const override {
    const Shape &in = tape.input.shape();
    const std::size_t batch = in[0], steps = in[1], units = in[2];
    CheckSameShape(grad_out.shape(), Shape{batch, units}, "last_step backward");
    Tensor g(in);
    for (std::size_t b = 0; b < batch; ++b)
      std::copy(grad_out.data() + b * units, grad_out.data() + (b + 1) * units,
                g.data() + (b * steps + steps - 1) * units);
    return g;
  }
};

}  // namespace

std::unique_ptr<Layer> MakeLayer(const LayerSpec &spec) {
  switch (spec.kind) {
    case LayerKind::kDense:
      if (spec.in == 0 || spec.out == 0) break;
      return std::make_unique<DenseLayer>(spec.in, spec.out);
    case LayerKind::kRelu: return std::make_unique<ReluLayer>();
    case LayerKind::kConv2d:
      if (spec.in == 0 || spec.out == 0) break;
      return std::make_unique<Conv2dLayer>(spec.in, spec.out);
    case LayerKind::kMaxPool2: return std::make_unique<MaxPool2Layer>();
    case LayerKind::kUpsample2: return std::make_unique<Upsample2Layer>();
    case LayerKind::kReshape:
      if (spec.target.empty() || NumElements(spec.target) == 0) break;
      return std::make_unique<ReshapeLayer>(spec.target);
    case LayerKind::kLstm:
      if (spec.in == 0 || spec.out == 0) break;
      return std::make_unique<LstmLayer>(spec.in, spec.out);
    case LayerKind::kLastStep: return std::make_unique<LastStepLayer>();
  }
  Fail(ErrorKind::kValidation, "invalid layer spec '" + SpecString(spec) + "'");
}

}  // namespace vtinv::nn
