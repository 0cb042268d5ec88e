// tools/run_config.h

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

#ifndef VTINV_TOOLS_RUN_CONFIG_H_
#define VTINV_TOOLS_RUN_CONFIG_H_

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "vtinv/corpus.h"
#include "vtinv/frontend.h"
#include "vtinv/metrics.h"
#include "vtinv/models.h"
#include "vtinv/train.h"

namespace vtinv::cli {

/// Every tunable default of the pipeline. Keys are flat names such as
/// "batch_size" or "cwssim_mode"; see PrintRunConfig for the full list.
struct RunConfig {
  CorpusConfig corpus;
  AnalysisConfig analysis;
  LspSearch lsp;
  SplitSizes split;
  ArchSizes sizes;
  TrainConfig train;
  MetricConfig metrics;
  std::size_t predict_batch = 256;

  /// Throws kValidation for an unknown key or an unparsable value.
  void Set(const std::string &key, const std::string &value);
  std::string Get(const std::string &key) const;
  void Validate() const;
};

/// All keys in documentation order.
std::vector<std::string> RunConfigKeys();

/// Defaults, then `path` (key=value lines, '#' comments) if given, then
/// "key=value" overrides in order.
RunConfig LoadRunConfig(const std::optional<std::filesystem::path> &path,
                        const std::vector<std::string> &overrides = {});

/// Writes "key=value  # description" for every key; the output parses back.
void PrintRunConfig(std::ostream &os, const RunConfig &config);

}  // namespace vtinv::cli

#endif  // VTINV_TOOLS_RUN_CONFIG_H_
