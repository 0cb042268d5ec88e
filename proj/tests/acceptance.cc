// tests/acceptance.cc

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

// Acceptance suite: one PASS or FAIL line per primary criterion, exit status 1
// if any criterion fails. The end-to-end criteria drive the vtinv binary.

#include <chrono>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <sys/wait.h>

#include "grad_cases.h"
#include "test_util.h"
#include "vtinv/metrics.h"
#include "vtinv/models.h"
#include "vtinv/train.h"

namespace vtinv {
namespace {

namespace fs = std::filesystem;
using testing::TempDir;

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Accumulates sub-checks of one criterion; the first failures are kept.
class Checks {
 public:
  void Expect(bool ok, const std::string &what) {
    if (ok) return;
    outcome_.pass = false;
    if (++failures_ <= 3) outcome_.detail += (outcome_.detail.empty() ? "" : "; ") + what;
  }
  void Note(const std::string &what) {
    if (outcome_.pass) outcome_.detail += (outcome_.detail.empty() ? "" : "; ") + what;
  }
  Outcome Done() const { return outcome_; }

 private:
  Outcome outcome_;
  int failures_ = 0;
};

std::string Fmt(double v, int digits = 3) {
  std::ostringstream os;
  os << std::setprecision(digits) << v;
  return os.str();
}

double Seconds(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - since).count();
}

// Runs the command-line tool; output goes to log.
int RunCli(const std::string &args, const fs::path &log) {
  const std::string cmd = std::string(VTINV_CLI_PATH) + " " + args + " >>" + log.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::vector<std::vector<std::string>> ReadCsv(const fs::path &path) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(testing::ReadBytes(path));
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

Outcome GradientFidelity() {
  const auto start = std::chrono::steady_clock::now();
  Checks c;
  double worst = 0.0;
  std::size_t runs = 0;
  for (const testing::GradCase &gc : testing::GradCases())
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const nn::GradCheckResult r = gc.run(seed);
      ++runs;
      worst = std::max(worst, r.max_rel_error);
      c.Expect(r.max_rel_error < 1e-5 && r.entries > 0,
               gc.name + " seed " + std::to_string(seed) + " error " + Fmt(r.max_rel_error) +
                   " at " + r.worst);
    }
  const double secs = Seconds(start);
  c.Expect(secs < 60.0, "took " + Fmt(secs) + " s");
  c.Note(std::to_string(runs) + " checks over 20 seeds, worst " + Fmt(worst) + ", " + Fmt(secs) + " s");
  return c.Done();
}

Outcome ParameterBudget() {
  Checks c;
  const double fc = double(CountParams(BuildFcDnn())), lstm = double(CountParams(BuildLstm()));
  c.Expect(fc == 8658624, "fcdnn has " + Fmt(fc, 10));
  c.Expect(lstm == 8635374, "lstm has " + Fmt(lstm, 10));
  c.Expect(std::abs(fc - 8.6e6) / 8.6e6 < 0.01, "fcdnn not within 1% of 8.6M");
  c.Expect(std::abs(lstm - 8.6e6) / 8.6e6 < 0.01, "lstm not within 1% of 8.6M");
  const double gap = std::abs(fc - lstm) / fc;
  c.Expect(gap < 0.005, "gap " + Fmt(gap));
  c.Note("fcdnn 8658624, lstm 8635374, gap " + Fmt(100 * gap) + "%");
  return c.Done();
}

Outcome ArchitectureShapes() {
  Checks c;
  const Model cnn = BuildCnn();
  const auto specs = cnn.net.specs();
  const auto trace = testing::ShapeTrace(cnn);
  std::vector<nn::Shape> seen = {{1, 25}};
  for (std::size_t i = 0; i < specs.size(); ++i)
    if (specs[i].kind == nn::LayerKind::kDense || specs[i].kind == nn::LayerKind::kConv2d ||
        (specs[i].kind == nn::LayerKind::kReshape && trace[i].size() == 4))
      seen.push_back(trace[i]);
  const std::vector<nn::Shape> want = {
      {1, 25}, {1, 500}, {1, 2312}, {1, 17, 17, 8}, {1, 34, 34, 8}, {1, 68, 68, 1}};
  c.Expect(seen == want, "cnn stages differ");
  c.Expect(trace.back() == nn::Shape{1, 4624}, "cnn output " + nn::ShapeString(trace.back()));
  const Model lstm = BuildLstm();
  c.Expect(lstm.SampleShape() == nn::Shape{10, 25}, "lstm window " + nn::ShapeString(lstm.SampleShape()));
  c.Expect(testing::ShapeTrace(lstm).back() == nn::Shape{1, 4624}, "lstm output");
  c.Note("cnn 25 > 500 > 2312 > 17x17x8 > 34x34x8 > 68x68, lstm window 10x25");
  return c.Done();
}

Outcome TrainingProtocol() {
  Checks c;
  EarlyStopping es(5);
  int stopped = 0;
  for (double v : {5.0, 4.0, 3.0, 3.1, 3.2, 3.3, 3.4, 3.5, 3.6})
    if (es.Update(v)) {
      stopped = es.epochs();
      break;
    }
  c.Expect(stopped == 8 && es.best_epoch() == 3,
           "scripted run stopped at " + std::to_string(stopped) + ", best " +
               std::to_string(es.best_epoch()));

  // Epoch cap: a model that keeps improving runs exactly max_epochs.
  {
    ArchSizes s;
    s.fc_width = 4;
    s.fc_depth = 1;
    Model m = BuildFcDnn(s);
    m.net.Initialize(1);
    const testing::Pairs pairs = testing::SyntheticPairs(2, 1, 10);
    const Dataset d = testing::PairsDataset(m, pairs);
    TrainConfig cfg;
    cfg.patience = 1000;
    const TrainHistory h = Train(&m, d, d, cfg);
    c.Expect(cfg.max_epochs == 100 && h.val_loss.size() == 100,
             "epoch cap ran " + std::to_string(h.val_loss.size()) + " epochs");
  }

  // Batch log and rerun equality through the command-line tool.
  TempDir dir("vtinv-protocol");
  const fs::path log = dir / "log.txt";
  const std::string sets = "--set split_train=6 --set split_validation=1 --set split_test=1 "
                           "--set fc_width=16 --set fc_depth=1 --set max_epochs=2";
  int rc = RunCli("synth --seed 4 --utterances 8 --frames 50 --out " + (dir / "corpus").string(), log);
  rc |= RunCli("extract --corpus " + (dir / "corpus").string() + " --out " + (dir / "feat").string(), log);
  for (const char *run : {"a", "b"})
    rc |= RunCli("train --quiet --arch fcdnn " + sets + " --corpus " + (dir / "corpus").string() +
                     " --features " + (dir / "feat").string() + " --out-model " +
                     (dir / (std::string(run) + ".vtm")).string() + " --batch-log " +
                     (dir / (std::string(run) + ".batches.csv")).string(),
                 log);
  c.Expect(rc == 0, "command failed, see " + log.string());
  if (rc != 0) return c.Done();

  std::vector<std::size_t> epoch1;
  const auto rows = ReadCsv(dir / "a.batches.csv");
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (rows[i][0] == "1") epoch1.push_back(std::stoul(rows[i][2]));
  c.Expect(epoch1 == std::vector<std::size_t>{128, 128, 44},
           "epoch 1 batch sizes differ from 128, 128, 44");
  c.Expect(testing::ReadBytes(dir / "a.vtm.history.csv") ==
               testing::ReadBytes(dir / "b.vtm.history.csv"),
           "history differs between reruns");
  c.Expect(testing::ReadBytes(dir / "a.vtm") == testing::ReadBytes(dir / "b.vtm"),
           "model differs between reruns");
  c.Expect(testing::ReadBytes(dir / "a.batches.csv") == testing::ReadBytes(dir / "b.batches.csv"),
           "batch log differs between reruns");
  c.Note("patience stop at 8 (best 3), cap 100 epochs, batches 128/128/44, reruns identical");
  return c.Done();
}

double TrainingNmse(const Model &m, const testing::Pairs &pairs) {
  ImageSequence ref, pred;
  for (std::size_t u = 0; u < pairs.features.size(); ++u) {
    const ImageSequence p = PredictSequence(m, pairs.features[u]);
    ref.insert(ref.end(), pairs.targets[u].begin(), pairs.targets[u].end());
    pred.insert(pred.end(), p.begin(), p.end());
  }
  return Nmse(ref, pred);
}

Outcome OverfitSmoke() {
  const auto start = std::chrono::steady_clock::now();
  Checks c;
  const testing::Pairs pairs = testing::SyntheticPairs(7, 2, 50);
  TrainConfig cfg;
  cfg.batch_size = 10;
  cfg.seed = 1;
  cfg.patience = 100;

  ArchSizes fc_sizes;
  fc_sizes.fc_width = 64;
  fc_sizes.fc_depth = 2;
  Model fc = BuildFcDnn(fc_sizes);
  fc.net.Initialize(1);
  const Dataset fc_data = testing::PairsDataset(fc, pairs);
  Train(&fc, fc_data, fc_data, cfg);
  const double fc_nmse = TrainingNmse(fc, pairs);
  c.Expect(fc_nmse < 1e-3, "fcdnn training nmse " + Fmt(fc_nmse));

  ArchSizes lstm_sizes;
  lstm_sizes.lstm_fc_width = lstm_sizes.lstm_hidden = 64;
  lstm_sizes.lstm_fc_depth = lstm_sizes.lstm_layers = 1;
  Model lstm = BuildLstm(lstm_sizes);
  lstm.net.Initialize(1);
  const Dataset lstm_data = testing::PairsDataset(lstm, pairs);
  Train(&lstm, lstm_data, lstm_data, cfg);
  const double lstm_nmse = TrainingNmse(lstm, pairs);
  c.Expect(lstm_nmse < 5e-3, "lstm training nmse " + Fmt(lstm_nmse));

  const double secs = Seconds(start);
  c.Expect(secs < 300.0, "took " + Fmt(secs) + " s");
  c.Note("fcdnn " + Fmt(fc_nmse) + ", lstm " + Fmt(lstm_nmse) + " after 100 epochs, " +
         Fmt(secs) + " s");
  return c.Done();
}

Outcome MetricOracles() {
  Checks c;
  double brute = 0.0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Image x = testing::RandomImage(16, seed), y = testing::RandomImage(16, seed + 100);
    brute = std::max(brute, std::abs(Ssim(x, y) - testing::BruteSsim(x, y)));
  }
  c.Expect(brute < 1e-10, "brute-force gap " + Fmt(brute));

  double self = 0.0;
  std::size_t frames = 0;
  const GaborBank bank = MakeGaborBank(68, 68);
  for (const Utterance &u : GenerateSyntheticCorpus(13, 4, 25, CorpusConfig{}))
    for (const GrayImage &g : u.frames) {
      const Image x = ToUnitImage(g);
      self = std::max({self, std::abs(Ssim(x, x) - 1.0), std::abs(CwSsim(x, x, bank, {}) - 1.0)});
      ++frames;
    }
  c.Expect(frames == 100 && self < 1e-9, "self-similarity gap " + Fmt(self));

  // The stated approximation 0.8005 does not match its own formula, whose
  // value is 0.80009995; the test holds the formula to 1e-6.
  const SsimConfig cfg;
  const double closed = (2 * 0.2 * 0.4 + cfg.c1()) / (0.2 * 0.2 + 0.4 * 0.4 + cfg.c1());
  const double got = Ssim(Image(20, 20, 0.2), Image(20, 20, 0.4));
  c.Expect(std::abs(got - closed) < 1e-6, "constant pair " + Fmt(got, 10) + " vs " + Fmt(closed, 10));
  c.Note("brute-force gap " + Fmt(brute) + ", self-similarity gap " + Fmt(self) +
         " on 100 frames, constant pair " + Fmt(got, 8) + " (closed form " + Fmt(closed, 8) +
         "; the quoted 0.8005 is a rounding slip)");
  return c.Done();
}

Outcome CwSsimRobustness() {
  Checks c;
  const std::vector<Image> frames = testing::TexturedFrames(100);
  const GaborBank bank = MakeGaborBank(68, 68);
  int wins = 0;
  for (const Image &x : frames) {
    const Image y = testing::ShiftColumns(x, 1);
    wins += CwSsim(x, y, bank, {}) > Ssim(x, y);
  }
  c.Expect(frames.size() == 100 && wins >= 95, std::to_string(wins) + "/100 frames");
  c.Note(std::to_string(wins) + "/100 textured frames");
  return c.Done();
}

Outcome EndToEnd() {
  const auto start = std::chrono::steady_clock::now();
  Checks c;
  TempDir dir("vtinv-e2e");
  const fs::path log = dir / "log.txt";
  const std::string corpus = (dir / "corpus").string(), feat = (dir / "feat").string();
  const std::string sets = "--set split_train=12 --set split_validation=2 --set split_test=2 "
                           "--set fc_width=64 --set fc_depth=2 --set batch_size=32 --set max_epochs=40";
  const std::vector<std::pair<std::string, std::string>> steps = {
      {"synth", "synth --seed 21 --utterances 16 --frames 40 --out " + corpus},
      {"extract", "extract --corpus " + corpus + " --out " + feat},
      {"train", "train --quiet --arch fcdnn " + sets + " --corpus " + corpus + " --features " +
                    feat + " --out-model " + (dir / "fc.vtm").string()},
      {"predict", "predict " + sets + " --model " + (dir / "fc.vtm").string() + " --features " +
                      feat + " --corpus " + corpus + " --subset test --out-frames " +
                      (dir / "trained").string()},
      {"predict --untrained", "predict --untrained " + sets + " --model " +
                                  (dir / "fc.vtm").string() + " --features " + feat +
                                  " --corpus " + corpus + " --subset test --out-frames " +
                                  (dir / "untrained").string()},
      {"evaluate", "evaluate " + sets + " --subset test --ref-corpus " + corpus +
                       " --pred-frames " + (dir / "trained").string() + " --out-report " +
                       (dir / "trained.csv").string()},
      {"evaluate untrained", "evaluate " + sets + " --subset test --ref-corpus " + corpus +
                                 " --pred-frames " + (dir / "untrained").string() +
                                 " --out-report " + (dir / "untrained.csv").string()},
  };
  for (const auto &[name, args] : steps) {
    const int rc = RunCli(args, log);
    c.Expect(rc == 0, name + " exited " + std::to_string(rc));
    if (rc != 0) {
      std::cerr << testing::ReadBytes(log);
      return c.Done();
    }
  }

  // Complete report: 40 frame rows and a mean row per test utterance plus
  // one speaker row; returns the speaker NMSE.
  auto speaker_nmse = [&](const std::string &file) {
    const auto rows = ReadCsv(dir / file);
    std::size_t frame_rows = 0, mean_rows = 0, speaker_rows = 0;
    double nmse = NAN;
    for (std::size_t i = 1; i < rows.size(); ++i) {
      if (rows[i].size() != 6) continue;
      if (rows[i][1] == "ALL") {
        ++speaker_rows;
        nmse = std::stod(rows[i][3]);
      } else if (rows[i][2] == "mean") {
        ++mean_rows;
      } else {
        ++frame_rows;
      }
    }
    c.Expect(rows.size() == 1 + 2 * 41 + 1 && frame_rows == 80 && mean_rows == 2 && speaker_rows == 1,
             file + " is incomplete");
    return nmse;
  };
  const double trained = speaker_nmse("trained.csv");
  const double untrained = speaker_nmse("untrained.csv");
  c.Expect(trained < untrained, "trained nmse " + Fmt(trained) + " vs untrained " + Fmt(untrained));
  const double secs = Seconds(start);
  c.Note("test nmse trained " + Fmt(trained) + " vs untrained " + Fmt(untrained) + ", " +
         Fmt(secs) + " s");
  return c.Done();
}

}  // namespace
}  // namespace vtinv

int main() {
  using namespace vtinv;
  const std::vector<std::pair<std::string, Outcome (*)()>> criteria = {
      {"gradient fidelity", GradientFidelity},
      {"parameter budget", ParameterBudget},
      {"architecture shapes", ArchitectureShapes},
      {"training protocol", TrainingProtocol},
      {"overfit smoke test", OverfitSmoke},
      {"metric oracles", MetricOracles},
      {"cw-ssim robustness", CwSsimRobustness},
      {"end-to-end pipeline", EndToEnd},
  };
  int failed = 0;
  for (const auto &[name, fn] : criteria) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception &e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::cout << (o.pass ? "PASS  " : "FAIL  ") << name << ": " << o.detail << std::endl;
  }
  std::cout << "SKIP  full-corpus reproduction: needs USC-TIMIT and full-size training "
               "(manual procedure in README)"
            << std::endl;
  std::cout << (failed ? std::to_string(failed) + " criteria failed" : "all criteria passed")
            << std::endl;
  return failed ? 1 : 0;
}
