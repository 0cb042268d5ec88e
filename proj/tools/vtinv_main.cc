// tools/vtinv_main.cc

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

// Command-line front end: synth, extract, train, predict, evaluate, config.

#include <iostream>

#include "CLI11.hpp"
#include "commands.h"

namespace {

using namespace vtinv;
using namespace vtinv::cli;

// Options shared by every subcommand.
struct Common {
  std::string config;
  std::vector<std::string> overrides;
};

void AddCommon(CLI::App *cmd, Common *common) {
  cmd->add_option("--config", common->config, "key=value config file");
  cmd->add_option("--set", common->overrides, "config override key=value (repeatable)");
}

RunConfig Load(const Common &common) {
  std::optional<fs::path> path;
  if (!common.config.empty()) path = common.config;
  return LoadRunConfig(path, common.overrides);
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"vtinv: speech features to vocal-tract MR image sequences"};
  app.require_subcommand(1);
  Common common;

  SynthOptions synth;
  auto *cmd_synth = app.add_subcommand("synth", "write a synthetic corpus");
  cmd_synth->add_option("--seed", synth.seed, "corpus seed");
  cmd_synth->add_option("--utterances", synth.utterances, "number of utterances");
  cmd_synth->add_option("--frames", synth.frames, "frames per utterance");
  cmd_synth->add_option("--out", synth.out, "output corpus directory")->required();

  ExtractOptions extract;
  auto *cmd_extract = app.add_subcommand("extract", "compute VTF1 feature files");
  cmd_extract->add_option("--corpus", extract.corpus, "corpus directory")->required();
  cmd_extract->add_option("--out", extract.out, "feature directory")->required();

  TrainOptions train;
  std::string train_arch;
  bool quiet = false;
  auto *cmd_train = app.add_subcommand("train", "train a model with early stopping");
  cmd_train->add_option("--corpus", train.corpus, "corpus directory")->required();
  cmd_train->add_option("--features", train.features, "feature directory")->required();
  cmd_train->add_option("--arch", train_arch, "fcdnn, cnn or lstm")->required();
  cmd_train->add_option("--out-model", train.out_model, "model file")->required();
  cmd_train->add_option("--history", train.history, "per-epoch loss CSV");
  cmd_train->add_option("--batch-log", train.batch_log, "per-batch loss CSV");
  cmd_train->add_flag("--quiet", quiet, "no progress output");

  PredictOptions predict;
  std::string predict_subset = "all";
  auto *cmd_predict = app.add_subcommand("predict", "write predicted PGM frame sequences");
  cmd_predict->add_option("--model", predict.model, "model file")->required();
  cmd_predict->add_option("--features", predict.features, "feature directory")->required();
  cmd_predict->add_option("--out-frames", predict.out_frames, "output directory")->required();
  cmd_predict->add_option("--corpus", predict.corpus, "corpus, to resolve --subset");
  cmd_predict->add_option("--subset", predict_subset, "all, train, validation or test");
  cmd_predict->add_flag("--untrained", predict.untrained,
                        "use the freshly initialized weights of the model's architecture");

  EvaluateOptions evaluate;
  std::string evaluate_subset = "all";
  std::string evaluate_utterance;
  auto *cmd_evaluate = app.add_subcommand("evaluate", "score predictions against references");
  cmd_evaluate->add_option("--ref-corpus", evaluate.ref_corpus, "reference corpus")->required();
  cmd_evaluate->add_option("--pred-frames", evaluate.pred_frames, "prediction directory")
      ->required();
  cmd_evaluate->add_option("--out-report", evaluate.out_report, "metrics CSV")->required();
  cmd_evaluate->add_option("--subset", evaluate_subset, "all, train, validation or test");
  cmd_evaluate->add_option("--utterance", evaluate_utterance,
                           "write only this utterance's per-frame rows");

  auto *cmd_config = app.add_subcommand("config", "print every config key with its value");

  for (CLI::App *cmd : {cmd_synth, cmd_extract, cmd_train, cmd_predict, cmd_evaluate, cmd_config})
    AddCommon(cmd, &common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const RunConfig config = Load(common);
    if (cmd_synth->parsed()) {
      CmdSynth(synth, config);
    } else if (cmd_extract->parsed()) {
      CmdExtract(extract, config);
    } else if (cmd_train->parsed()) {
      train.arch = ParseArchitecture(train_arch);
      if (!quiet) train.log = &std::cerr;
      CmdTrain(train, config);
    } else if (cmd_predict->parsed()) {
      predict.subset = ParseSubset(predict_subset);
      CmdPredict(predict, config);
    } else if (cmd_evaluate->parsed()) {
      evaluate.subset = ParseSubset(evaluate_subset);
      if (!evaluate_utterance.empty()) evaluate.utterance = evaluate_utterance;
      const MetricReport report = CmdEvaluate(evaluate, config);
      for (const SpeakerScores &s : report.speakers)
        std::cout << s.speaker << ": " << s.utterances << " utterances, nmse " << s.nmse
                  << ", ssim " << s.ssim << ", cwssim " << s.cwssim << '\n';
    } else if (cmd_config->parsed()) {
      PrintRunConfig(std::cout, config);
    }
  } catch (const Error &e) {
    std::cerr << "vtinv: " << e.what() << '\n';
    return ExitCode(e.kind());
  } catch (const std::exception &e) {
    std::cerr << "vtinv: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
