// tools/commands.h

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

#ifndef VTINV_TOOLS_COMMANDS_H_
#define VTINV_TOOLS_COMMANDS_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

#include "run_config.h"
#include "vtinv/error.h"
#include "vtinv/metrics.h"
#include "vtinv/train.h"

namespace vtinv::cli {

namespace fs = std::filesystem;

/// 2 validation, 3 data, 4 numeric or divergence.
int ExitCode(ErrorKind kind);

/// Which utterances of a corpus a command works on.
enum class Subset { kAll, kTrain, kValidation, kTest };
Subset ParseSubset(const std::string &name);

struct SynthOptions {
  std::uint64_t seed = 1;
  std::size_t utterances = 10;
  std::size_t frames = 50;
  fs::path out;
};
void CmdSynth(const SynthOptions &options, const RunConfig &config);

struct ExtractOptions {
  fs::path corpus;
  fs::path out;  // receives <id>.vtf per utterance
};
void CmdExtract(const ExtractOptions &options, const RunConfig &config);

struct TrainOptions {
  fs::path corpus;
  fs::path features;
  Architecture arch = Architecture::kFcDnn;
  fs::path out_model;
  fs::path history;    // per-epoch CSV; defaults to <out_model>.history.csv
  fs::path batch_log;  // optional per-batch CSV
  std::ostream *log = nullptr;
};
TrainHistory CmdTrain(const TrainOptions &options, const RunConfig &config);

struct PredictOptions {
  fs::path model;
  fs::path features;
  fs::path out_frames;  // receives <id>/frame_NNNNN.pgm
  fs::path corpus;      // needed only to resolve a subset other than all
  Subset subset = Subset::kAll;
  bool untrained = false;  // predict with freshly initialized weights instead
};
void CmdPredict(const PredictOptions &options, const RunConfig &config);

struct EvaluateOptions {
  fs::path ref_corpus;
  fs::path pred_frames;
  fs::path out_report;
  Subset subset = Subset::kAll;
  std::optional<std::string> utterance;  // per-frame CSV of one utterance only
};
MetricReport CmdEvaluate(const EvaluateOptions &options, const RunConfig &config);

}  // namespace vtinv::cli

#endif  // VTINV_TOOLS_COMMANDS_H_
