// tests/train_test.cc

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

#include "doctest.h"
#include "test_util.h"
#include "vtinv/train.h"

namespace vtinv {
namespace {

namespace fs = std::filesystem;
using testing::KindOf;
using testing::Pairs;
using testing::PairsDataset;
using testing::SyntheticPairs;
using testing::TempDir;

ArchSizes Small() {
  ArchSizes s;
  s.fc_width = 16;
  s.fc_depth = 2;
  s.cnn_dense = 8;
  s.cnn_filters = 2;
  s.lstm_fc_width = s.lstm_hidden = 8;
  s.lstm_fc_depth = s.lstm_layers = 1;
  s.seq_len = 4;
  return s;
}

const Pairs &Tiny() {
  static const Pairs pairs = SyntheticPairs(7, 2, 50);
  return pairs;
}

Model SmallModel(Architecture arch, std::uint64_t seed = 1) {
  Model m = BuildModel(arch, Small());
  m.net.Initialize(seed);
  return m;
}

TEST_SUITE("train") {

TEST_CASE("early stopping follows the patience rule") {
  EarlyStopping es(5);
  const std::vector<double> losses = {5, 4, 3, 3.1, 3.2, 3.3, 3.4, 3.5, 3.6};
  int stopped_at = 0;
  for (double v : losses)
    if (es.Update(v)) {
      stopped_at = es.epochs();
      break;
    }
  CHECK(stopped_at == 8);
  CHECK(es.best_epoch() == 3);
  CHECK(es.best_loss() == 3.0);

  EarlyStopping ties(2);
  CHECK_FALSE(ties.Update(1.0));
  CHECK(ties.last_improved());
  CHECK_FALSE(ties.Update(1.0));  // equal is not an improvement
  CHECK_FALSE(ties.last_improved());
  CHECK(ties.Update(1.0));
}

TEST_CASE("frozen weights stop after patience plus one epochs") {
  Model m = SmallModel(Architecture::kFcDnn);
  const Dataset d = PairsDataset(m, Tiny());
  TrainConfig c;
  c.lr = 0.0;
  const TrainHistory h = Train(&m, d, d, c);
  CHECK(h.val_loss.size() == 6);
  CHECK(h.best_epoch == 1);
  CHECK(h.stopped_early);
}

TEST_CASE("epoch cap and observed batch sizes") {
  const Pairs pairs = SyntheticPairs(3, 3, 100);
  Model m = SmallModel(Architecture::kFcDnn);
  const Dataset d = PairsDataset(m, pairs);
  REQUIRE(d.size() == 300);
  TrainConfig c;
  c.max_epochs = 2;
  c.patience = 100;
  std::vector<std::size_t> sizes;
  TrainHooks hooks;
  hooks.on_batch = [&](const BatchEvent &e) {
    if (e.epoch == 1) sizes.push_back(e.batch_size);
  };
  const TrainHistory h = Train(&m, d, d, c, hooks);
  CHECK(h.train_loss.size() == 2);
  CHECK_FALSE(h.stopped_early);
  CHECK(sizes == std::vector<std::size_t>{128, 128, 44});
}

TEST_CASE("training is deterministic for a fixed seed") {
  for (Architecture arch : {Architecture::kFcDnn, Architecture::kCnn, Architecture::kLstm}) {
    CAPTURE(ArchitectureName(arch));
    TrainConfig c;
    c.max_epochs = 4;
    c.batch_size = 16;
    c.seed = 11;
    Model a = SmallModel(arch), b = SmallModel(arch);
    const Dataset d = PairsDataset(a, Tiny());
    const TrainHistory ha = Train(&a, d, d, c), hb = Train(&b, d, d, c);
    CHECK(ha == hb);
    CHECK(*a.net.Parameters()[0] == *b.net.Parameters()[0]);

    c.shuffle = false;
    Model p = SmallModel(arch), q = SmallModel(arch);
    const TrainHistory hp = Train(&p, d, d, c), hq = Train(&q, d, d, c);
    for (std::size_t e = 0; e < hp.val_loss.size(); ++e)
      CHECK(std::abs(hp.val_loss[e] - hq.val_loss[e]) <= 1e-12);
  }
}

TEST_CASE("best epoch weights are restored and checkpointed") {
  TempDir dir;
  const Pairs val = SyntheticPairs(99, 1, 40);
  Model m = SmallModel(Architecture::kFcDnn);
  const Dataset train = PairsDataset(m, Tiny());
  const Dataset validation = PairsDataset(m, val);
  TrainConfig c;
  c.max_epochs = 15;
  c.batch_size = 8;
  c.lr = 3e-3;
  TrainHooks hooks;
  hooks.checkpoint = dir / "best.vtm";
  const TrainHistory h = Train(&m, train, validation, c, hooks);
  const double best = *std::min_element(h.val_loss.begin(), h.val_loss.end());
  CHECK(h.val_loss[std::size_t(h.best_epoch - 1)] == best);
  CHECK(DatasetLoss(m, validation) == best);
  const Model saved = LoadModel(dir / "best.vtm");
  CHECK(DatasetLoss(saved, validation) == best);
}

TEST_CASE("noise targets stop within the epoch cap") {
  Model m = SmallModel(Architecture::kFcDnn);
  Dataset d = PairsDataset(m, Tiny());
  Rng rng(3);
  for (double &v : d.targets.values()) v = rng.Uniform();
  Dataset v = d;
  for (double &x : v.targets.values()) x = rng.Uniform();
  TrainConfig c;
  c.batch_size = 32;
  const TrainHistory h = Train(&m, d, v, c);
  CHECK(h.val_loss.size() <= 100);
}

TEST_CASE("training errors") {
  Model m = SmallModel(Architecture::kFcDnn);
  const Dataset d = PairsDataset(m, Tiny());
  CHECK(KindOf([&] { Train(&m, Dataset{}, d, TrainConfig{}); }) == ErrorKind::kSize);
  CHECK(KindOf([&] { Train(&m, d, Dataset{}, TrainConfig{}); }) == ErrorKind::kSize);

  Dataset bad = d;
  bad.inputs[3] = NAN;
  try {
    Train(&m, bad, d, TrainConfig{});
    FAIL("expected divergence");
  } catch (const Error &e) {
    CHECK(e.kind() == ErrorKind::kDivergence);
    const std::string what = e.what();
    CHECK(what.find("epoch 1") != std::string::npos);
    CHECK(what.find("batch") != std::string::npos);
  }

  TrainConfig c;
  c.batch_size = 0;
  CHECK(KindOf([&] { c.Validate(); }) == ErrorKind::kValidation);
  CHECK(KindOf([&] { MakeDataset(m, Tiny().features, std::span(Tiny().targets).first(1)); }) ==
        ErrorKind::kShape);
}

TEST_CASE("shrunk fcdnn overfits a tiny corpus") {
  ArchSizes s;
  s.fc_width = 64;
  s.fc_depth = 2;
  Model m = BuildFcDnn(s);
  m.net.Initialize(1);
  const Dataset d = PairsDataset(m, Tiny());
  TrainConfig c;
  c.batch_size = 10;
  c.seed = 1;
  c.patience = 100;
  const TrainHistory h = Train(&m, d, d, c);
  CHECK(h.train_loss.size() <= 100);
  CHECK(DatasetLoss(m, d) < 1e-3);
}

TEST_CASE("model files round trip bit exactly") {
  TempDir dir;
  for (Architecture arch : {Architecture::kFcDnn, Architecture::kCnn, Architecture::kLstm}) {
    CAPTURE(ArchitectureName(arch));
    Model m = SmallModel(arch, 5);
    m.norm = FitNormalizer(Tiny().features);
    const fs::path path = dir / (std::string(ArchitectureName(arch)) + ".vtm");
    SaveModel(path, m);
    const Model back = LoadModel(path);
    CHECK(back.arch == arch);
    CHECK(back.sizes == m.sizes);
    CHECK(back.norm.mean == m.norm.mean);
    CHECK(back.norm.std == m.norm.std);
    CHECK(PredictSequence(back, Tiny().features[0]) == PredictSequence(m, Tiny().features[0]));

    const std::string text = testing::ReadBytes(path);
    const std::size_t pos = text.find("\ntensors ");
    REQUIRE(pos != std::string::npos);
    CHECK(std::stoul(text.substr(pos + 9)) == m.net.Parameters().size());
  }
}

TEST_CASE("damaged model files are corruption errors") {
  TempDir dir;
  const Model m = SmallModel(Architecture::kFcDnn);
  SaveModel(dir / "m.vtm", m);
  const std::string bytes = testing::ReadBytes(dir / "m.vtm");

  testing::WriteBytes(dir / "short.vtm", bytes.substr(0, bytes.size() - 8));
  CHECK(KindOf([&] { LoadModel(dir / "short.vtm"); }) == ErrorKind::kCorruption);

  std::string shape = bytes;
  const std::size_t at = shape.find("f64 25x16");
  REQUIRE(at != std::string::npos);
  shape.replace(at, 9, "f64 25x17");
  testing::WriteBytes(dir / "shape.vtm", shape);
  CHECK(KindOf([&] { LoadModel(dir / "shape.vtm"); }) == ErrorKind::kCorruption);

  testing::WriteBytes(dir / "junk.vtm", "not a model");
  CHECK(KindOf([&] { LoadModel(dir / "junk.vtm"); }) == ErrorKind::kCorruption);
  CHECK(KindOf([&] { LoadModel(dir / "missing.vtm"); }) == ErrorKind::kIo);
}

}  // TEST_SUITE

}  // namespace
}  // namespace vtinv
