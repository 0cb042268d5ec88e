// tests/cli_test.cc

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

#include <sstream>

#include "commands.h"
#include "doctest.h"
#include "run_config.h"
#include "test_util.h"

namespace vtinv::cli {
namespace {

using testing::KindOf;
using testing::ReadBytes;
using testing::TempDir;

RunConfig Config(std::vector<std::string> overrides = {}) {
  for (const char *kv : {"split_train=3", "split_validation=1", "split_test=2", "fc_width=16",
                         "fc_depth=2", "lstm_fc_width=8", "lstm_fc_depth=1", "lstm_hidden=8",
                         "lstm_layers=1", "batch_size=16"})
    overrides.insert(overrides.begin(), kv);
  return LoadRunConfig(std::nullopt, overrides);
}

std::vector<std::string> UtteranceIds(const fs::path &corpus) {
  std::vector<std::string> ids;
  for (const fs::path &d : ListUtteranceDirs(corpus)) ids.push_back(d.filename().string());
  return ids;
}

// Relative path -> bytes for every regular file under root.
std::map<std::string, std::string> Tree(const fs::path &root) {
  std::map<std::string, std::string> files;
  for (const auto &e : fs::recursive_directory_iterator(root))
    if (e.is_regular_file()) files[fs::relative(e.path(), root).string()] = ReadBytes(e.path());
  return files;
}

// A six-utterance corpus of 23 frames with extracted features.
struct Workspace {
  TempDir dir{"vtinv-cli"};
  fs::path corpus = dir / "corpus";
  fs::path features = dir / "features";
  RunConfig config = Config();

  Workspace() {
    CmdSynth({.seed = 3, .utterances = 6, .frames = 23, .out = corpus}, config);
    CmdExtract({.corpus = corpus, .out = features}, config);
  }
};

TEST_SUITE("cli") {

TEST_CASE("defaults follow the published protocol") {
  const RunConfig c = LoadRunConfig(std::nullopt);
  CHECK(c.split.n_train == 430);
  CHECK(c.split.n_val == 20);
  CHECK(c.split.n_test == 10);
  CHECK(c.train.max_epochs == 100);
  CHECK(c.train.patience == 5);
  CHECK(c.train.batch_size == 128);
  CHECK(c.corpus.audio_rate == 20000);
  CHECK(c.corpus.frame_shift == 863);
  CHECK(c.sizes.seq_len == 10);
  CHECK(c.Get("cwssim_mode") == "windowed");
}

TEST_CASE("printed config parses back to itself") {
  TempDir dir;
  const RunConfig c = Config({"lr=0.0025", "cwssim_mode=global", "shuffle=false"});
  std::ostringstream printed;
  PrintRunConfig(printed, c);
  testing::WriteBytes(dir / "run.cfg", printed.str());
  const RunConfig back = LoadRunConfig(dir / "run.cfg");
  for (const std::string &key : RunConfigKeys()) {
    CAPTURE(key);
    CHECK(back.Get(key) == c.Get(key));
  }
  CHECK(back.train.lr == 0.0025);
  CHECK(back.metrics.cwssim.mode == CwSsimMode::kGlobal);
}

TEST_CASE("bad config input is a validation error") {
  CHECK(KindOf([] { LoadRunConfig(std::nullopt, {"no_such_key=1"}); }) == ErrorKind::kValidation);
  CHECK(KindOf([] { LoadRunConfig(std::nullopt, {"lr=fast"}); }) == ErrorKind::kValidation);
  CHECK(KindOf([] { LoadRunConfig(std::nullopt, {"lr"}); }) == ErrorKind::kValidation);
  CHECK(KindOf([] { LoadRunConfig(std::nullopt, {"patience=-1"}); }) == ErrorKind::kValidation);
  CHECK(KindOf([] { LoadRunConfig(fs::path("/nonexistent/run.cfg")); }) == ErrorKind::kIo);
}

TEST_CASE("exit codes") {
  CHECK(ExitCode(ErrorKind::kValidation) == 2);
  CHECK(ExitCode(ErrorKind::kFormat) == 3);
  CHECK(ExitCode(ErrorKind::kCoverage) == 3);
  CHECK(ExitCode(ErrorKind::kDivergence) == 4);
  CHECK(ExitCode(ErrorKind::kNumeric) == 4);
  CHECK(ParseSubset("test") == Subset::kTest);
  CHECK(KindOf([] { ParseSubset("dev"); }) == ErrorKind::kValidation);
}

TEST_CASE("synth is reproducible and validates its arguments") {
  TempDir dir;
  const RunConfig c = Config();
  CmdSynth({.seed = 9, .utterances = 2, .frames = 5, .out = dir / "a"}, c);
  CmdSynth({.seed = 9, .utterances = 2, .frames = 5, .out = dir / "b"}, c);
  CHECK(Tree(dir / "a") == Tree(dir / "b"));
  CHECK(UtteranceIds(dir / "a").size() == 2);
  CHECK(KindOf([&] { CmdSynth({.seed = 9, .utterances = 2, .frames = 0, .out = dir / "c"}, c); }) ==
        ErrorKind::kValidation);
}

TEST_CASE("extract writes one feature row per frame") {
  Workspace ws;
  const auto ids = UtteranceIds(ws.corpus);
  REQUIRE(ids.size() == 6);
  for (const std::string &id : ids) {
    const FeatureMatrix f = ReadFeatures(ws.features / (id + ".vtf"));
    CHECK(f.rows == 23);
    CHECK(f.cols == 25);
  }
  const fs::path again = ws.dir / "features2";
  CmdExtract({.corpus = ws.corpus, .out = again}, ws.config);
  CHECK(Tree(again) == Tree(ws.features));

  testing::WriteBytes(ws.corpus / ids[2] / "audio.wav", "garbage");
  try {
    CmdExtract({.corpus = ws.corpus, .out = ws.dir / "features3"}, ws.config);
    FAIL("expected format error");
  } catch (const Error &e) {
    CHECK(e.kind() == ErrorKind::kFormat);
    CHECK(std::string(e.what()).find(ids[2]) != std::string::npos);
  }
}

TEST_CASE("train, predict and evaluate") {
  Workspace ws;
  const auto ids = UtteranceIds(ws.corpus);
  RunConfig config = Config({"max_epochs=3"});

  SUBCASE("fcdnn model matches the overridden architecture") {
    const fs::path model = ws.dir / "fc.vtm";
    const TrainHistory h = CmdTrain({.corpus = ws.corpus, .features = ws.features,
                                     .arch = Architecture::kFcDnn, .out_model = model,
                                     .batch_log = ws.dir / "batches.csv"},
                                    config);
    const Model m = LoadModel(model);
    CHECK(CountParams(m) == CountParams(BuildFcDnn(config.sizes)));
    CHECK(CountParams(m) == 25 * 16 + 16 + 16 * 16 + 16 + 16 * 4624 + 4624);
    CHECK(m.norm.mean.size() == 25);

    std::istringstream hist(ReadBytes(model.string() + ".history.csv"));
    std::string line;
    std::getline(hist, line);
    CHECK(line == "epoch,train_loss,val_loss,best");
    std::size_t rows = 0;
    while (std::getline(hist, line)) ++rows;
    CHECK(rows == h.val_loss.size());
    CHECK(rows <= 3);

    std::istringstream batches(ReadBytes(ws.dir / "batches.csv"));
    std::getline(batches, line);
    CHECK(line == "epoch,batch,batch_size,loss");
    std::getline(batches, line);
    CHECK(line.rfind("1,0,16,", 0) == 0);  // 69 training frames in batches of 16

    const fs::path pred = ws.dir / "pred";
    CmdPredict({.model = model, .features = ws.features, .out_frames = pred}, config);
    for (const std::string &id : ids) CHECK(ReadFrameSequence(pred / id).size() == 23);
    const auto first = Tree(pred);
    CmdPredict({.model = model, .features = ws.features, .out_frames = pred}, config);
    CHECK(Tree(pred) == first);

    const MetricReport r = CmdEvaluate({.ref_corpus = ws.corpus, .pred_frames = pred,
                                        .out_report = ws.dir / "report.csv",
                                        .subset = Subset::kTest},
                                       config);
    CHECK(r.utterances.size() == 2);
    CHECK(r.utterances[0].id == ids[4]);
    CHECK(r.speakers.size() == 1);
  }

  SUBCASE("lstm history stays within the epoch cap") {
    RunConfig lstm = Config({"seq_len=4"});
    const fs::path model = ws.dir / "lstm.vtm";
    const TrainHistory h = CmdTrain({.corpus = ws.corpus, .features = ws.features,
                                     .arch = Architecture::kLstm, .out_model = model,
                                     .history = ws.dir / "lstm.csv"},
                                    lstm);
    CHECK(h.val_loss.size() <= 100);
    CHECK(fs::exists(ws.dir / "lstm.csv"));
    CHECK(LoadModel(model).arch == Architecture::kLstm);
  }

  SUBCASE("missing features give an actionable error") {
    try {
      CmdTrain({.corpus = ws.corpus, .features = ws.dir / "nowhere",
                .arch = Architecture::kFcDnn, .out_model = ws.dir / "x.vtm"},
               config);
      FAIL("expected io error");
    } catch (const Error &e) {
      CHECK(e.kind() == ErrorKind::kIo);
      CHECK(std::string(e.what()).find("extract") != std::string::npos);
    }
  }

  SUBCASE("all-zero model predicts black frames") {
    Model m = BuildFcDnn(config.sizes);
    for (nn::Tensor *p : m.net.Parameters()) p->Fill(0.0);
    SaveModel(ws.dir / "zero.vtm", m);
    CmdPredict({.model = ws.dir / "zero.vtm", .features = ws.features,
                .out_frames = ws.dir / "zero"},
               config);
    for (const GrayImage &g : ReadFrameSequence(ws.dir / "zero" / ids[0]))
      for (std::uint8_t v : g.pixels) CHECK(v == 0);
  }

  SUBCASE("references as predictions score perfectly") {
    const fs::path pred = ws.dir / "copy";
    fs::create_directories(pred);
    for (const std::string &id : ids)
      fs::copy(ws.corpus / id / "frames", pred / id, fs::copy_options::recursive);
    const MetricReport r = CmdEvaluate(
        {.ref_corpus = ws.corpus, .pred_frames = pred, .out_report = ws.dir / "copy.csv"}, config);
    CHECK(r.utterances.size() == 6);
    for (const UtteranceScores &u : r.utterances) {
      CHECK(u.mean_nmse == 0.0);
      CHECK(std::abs(u.mean_ssim - 1.0) < 1e-9);
      CHECK(std::abs(u.mean_cwssim - 1.0) < 1e-9);
    }

    fs::remove(pred / ids[1] / FrameFileName(23));
    try {
      CmdEvaluate({.ref_corpus = ws.corpus, .pred_frames = pred, .out_report = ws.dir / "x.csv"},
                  config);
      FAIL("expected shape error");
    } catch (const Error &e) {
      CHECK(e.kind() == ErrorKind::kShape);
      CHECK(std::string(e.what()).find(ids[1]) != std::string::npos);
    }

    fs::remove_all(pred / ids[5]);
    CHECK(KindOf([&] {
            CmdEvaluate({.ref_corpus = ws.corpus, .pred_frames = pred,
                         .out_report = ws.dir / "y.csv", .subset = Subset::kTest},
                        config);
          }) == ErrorKind::kCoverage);
  }
}

}  // TEST_SUITE

}  // namespace
}  // namespace vtinv::cli
