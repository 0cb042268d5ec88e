// tests/nn_test.cc

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

#include <cmath>

#include "doctest.h"
#include "grad_cases.h"
#include "test_util.h"
#include "vtinv/layers.h"
#include "vtinv/network.h"
#include "vtinv/optim.h"

namespace vtinv::nn {
namespace {

using testing::KindOf;
using testing::RandomTensor;

double Sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

TEST_SUITE("nn") {

TEST_CASE("dense forward by hand") {
  const Tensor w(Shape{2, 2}, {1, 2, 3, 4});
  const Tensor x(Shape{1, 2}, {1, 1});
  const Tensor y = DenseForward(x, w, Tensor(Shape{2}));
  CHECK(y == Tensor(Shape{1, 2}, {4, 6}));

  const Tensor b(Shape{3}, {0.5, -1.0, 2.0});
  const Tensor rows = DenseForward(RandomTensor({4, 2}, 1), Tensor(Shape{2, 3}), b);
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 3; ++c) CHECK(rows[r * 3 + c] == b[c]);
  CHECK(KindOf([&] { DenseForward(Tensor(Shape{1, 3}), w, Tensor(Shape{2})); }) ==
        ErrorKind::kShape);
}

TEST_CASE("conv2d identity and box kernels") {
  const Tensor x = RandomTensor({2, 5, 6, 1}, 3);
  Tensor identity(Shape{3, 3, 1, 1});
  identity[4] = 1.0;
  CHECK(Conv2dForward(x, identity, Tensor(Shape{1})) == x);

  const Tensor flat(Shape{1, 5, 5, 1}, 0.7);
  const Tensor ones(Shape{3, 3, 1, 1}, 1.0);
  const Tensor y = Conv2dForward(flat, ones, Tensor(Shape{1}));
  for (int r = 1; r < 4; ++r)
    for (int c = 1; c < 4; ++c) CHECK(y[r * 5 + c] == doctest::Approx(9 * 0.7));
  CHECK(y[0] == doctest::Approx(4 * 0.7));  // corner sees a 2x2 patch
  CHECK(KindOf([&] { Conv2dForward(flat, Tensor(Shape{3, 3, 2, 1}), Tensor(Shape{1})); }) ==
        ErrorKind::kShape);
}

TEST_CASE("pooling and upsampling") {
  const Tensor flat(Shape{1, 4, 6, 2}, 0.3);
  const Tensor pooled = MaxPool2Forward(flat);
  CHECK(pooled.shape() == Shape{1, 2, 3, 2});
  for (double v : pooled.values()) CHECK(v == 0.3);

  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Tensor x = RandomTensor({2, 3, 5, 3}, seed);
    const Tensor up = Upsample2Forward(x);
    CHECK(up.shape() == Shape{2, 6, 10, 3});
    CHECK(MaxPool2Forward(up) == x);
  }
  CHECK(KindOf([] { MaxPool2Forward(Tensor(Shape{1, 3, 4, 1})); }) == ErrorKind::kShape);
}

TEST_CASE("lstm with zero parameters stays at zero") {
  const std::size_t n_in = 3, hidden = 4;
  LstmTrace trace;
  const Tensor h = LstmForward(RandomTensor({2, 5, n_in}, 1), Tensor(Shape{n_in, 4 * hidden}),
                               Tensor(Shape{hidden, 4 * hidden}), Tensor(Shape{4 * hidden}), &trace);
  for (double v : h.values()) CHECK(v == 0.0);
  for (double v : trace.cells.values()) CHECK(v == 0.0);
  for (std::size_t i = 0; i < trace.gates.size(); ++i) {
    const std::size_t gate = (i % (4 * hidden)) / hidden;
    CHECK(trace.gates[i] == (gate == kCellGate ? 0.0 : 0.5));
  }
}

TEST_CASE("single lstm step by hand") {
  const double x = 0.7;
  const Tensor w(Shape{1, 4}, {0.5, -0.3, 0.8, 0.2});
  const Tensor u(Shape{1, 4}, {9.0, 9.0, 9.0, 9.0});  // unused at t = 0
  const Tensor b(Shape{4}, {0.1, 0.2, -0.1, 0.05});
  const Tensor h = LstmForward(Tensor(Shape{1, 1, 1}, {x}), w, u, b);
  const double i = Sigmoid(0.5 * x + 0.1);
  const double g = std::tanh(0.8 * x - 0.1);
  const double o = Sigmoid(0.2 * x + 0.05);
  const double expected = o * std::tanh(i * g);
  CHECK(h[0] == doctest::Approx(expected).epsilon(1e-14));
  CHECK(h[0] == doctest::Approx(0.1405342592).epsilon(1e-9));
}

TEST_CASE("mse loss values") {
  const Tensor a = RandomTensor({3, 4}, 2);
  CHECK(MseLoss(a, a).value == 0.0);
  Tensor b = a;
  for (double &v : b.values()) v += 0.1;
  CHECK(MseLoss(b, a).value == doctest::Approx(0.01).epsilon(1e-12));
  CHECK(KindOf([&] { MseLoss(a, Tensor(Shape{4, 3})); }) == ErrorKind::kShape);
}

TEST_CASE("gradients match finite differences over many seeds") {
  for (const testing::GradCase &gc : testing::GradCases()) {
    CAPTURE(gc.name);
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      CAPTURE(seed);
      const GradCheckResult r = gc.run(seed);
      CAPTURE(r.worst);
      CHECK(r.entries > 0);
      CHECK(r.max_rel_error < gc.tolerance);
    }
  }
}

TEST_CASE("adam update rule") {
  SUBCASE("zero gradient leaves parameters") {
    Tensor p = RandomTensor({4}, 1);
    const Tensor before = p;
    AdamState state;
    std::vector<Tensor *> params = {&p};
    std::vector<Tensor> grads = {Tensor(Shape{4})};
    AdamStep(params, grads, &state);
    CHECK(p == before);
    CHECK(state.step == 1);
  }
  SUBCASE("first step moves by about lr") {
    Tensor p(Shape{1}, {2.0});
    AdamState state;
    std::vector<Tensor *> params = {&p};
    AdamStep(params, std::vector<Tensor>{Tensor(Shape{1}, {0.5})}, &state);
    CHECK(2.0 - p[0] == doctest::Approx(state.lr * 0.5 / (0.5 + state.epsilon)).epsilon(1e-12));
  }
  SUBCASE("minimizes a parabola") {
    Tensor x(Shape{1}, {1.0});
    AdamState state;
    state.lr = 0.1;
    std::vector<Tensor *> params = {&x};
    int steps = 0;
    while (std::abs(x[0]) >= 1e-3 && steps < 200) {
      AdamStep(params, std::vector<Tensor>{Tensor(Shape{1}, {2.0 * x[0]})}, &state);
      ++steps;
    }
    CAPTURE(steps);
    CHECK(std::abs(x[0]) < 1e-3);
  }
  SUBCASE("zero learning rate is bit exact") {
    Tensor p = RandomTensor({6}, 4);
    const Tensor before = p;
    AdamState state;
    state.lr = 0.0;
    std::vector<Tensor *> params = {&p};
    AdamStep(params, std::vector<Tensor>{RandomTensor({6}, 5)}, &state);
    CHECK(p == before);
  }
  SUBCASE("shape mismatch") {
    Tensor p(Shape{2});
    AdamState state;
    std::vector<Tensor *> params = {&p};
    CHECK(KindOf([&] { AdamStep(params, std::vector<Tensor>{Tensor(Shape{3})}, &state); }) ==
          ErrorKind::kShape);
  }
}

TEST_CASE("global norm clipping") {
  std::vector<Tensor> g = {Tensor(Shape{2}, {3.0, 0.0}), Tensor(Shape{1}, {4.0})};
  const double norm = ClipGlobalNorm(&g, 1.0);
  CHECK(norm == doctest::Approx(5.0));
  CHECK(g[0][0] == doctest::Approx(0.6));
  CHECK(g[1][0] == doctest::Approx(0.8));
}

TEST_CASE("forward is batch-order independent") {
  Network net({{LayerKind::kDense, 5, 8, {}}, {LayerKind::kRelu, 0, 0, {}}, {LayerKind::kDense, 8, 3, {}}});
  net.Initialize(3);
  const Tensor x = RandomTensor({6, 5}, 8);
  const std::vector<std::size_t> perm = {4, 0, 5, 2, 1, 3};
  Tensor xp(Shape{6, 5});
  for (std::size_t r = 0; r < 6; ++r)
    std::copy_n(x.data() + perm[r] * 5, 5, xp.data() + r * 5);
  const Tensor y = net.Forward(x), yp = net.Forward(xp);
  for (std::size_t r = 0; r < 6; ++r)
    for (std::size_t c = 0; c < 3; ++c) CHECK(yp[r * 3 + c] == y[perm[r] * 3 + c]);
  CHECK(net.Forward(x) == y);
}

TEST_CASE("network copies are deep") {
  Network net({{LayerKind::kDense, 2, 2, {}}});
  net.Initialize(1);
  Network copy = net;
  (*copy.Parameters()[0])[0] += 1.0;
  CHECK((*net.Parameters()[0])[0] != (*copy.Parameters()[0])[0]);
  CHECK(copy.specs() == net.specs());
  CHECK(net.ParameterNames()[0] == "0.dense.weight");
}

TEST_CASE("initialization is seeded") {
  Network a({{LayerKind::kDense, 10, 10, {}}}), b = a;
  a.Initialize(7);
  b.Initialize(7);
  CHECK(*a.Parameters()[0] == *b.Parameters()[0]);
  const double limit = std::sqrt(6.0 / 20.0);
  for (double v : a.Parameters()[0]->values()) CHECK(std::abs(v) <= limit);
  for (double v : a.Parameters()[1]->values()) CHECK(v == 0.0);
}

}  // TEST_SUITE

}  // namespace
}  // namespace vtinv::nn
