// core/src/report.cc

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

#include <charconv>

#include "vtinv/metrics.h"

namespace vtinv {

namespace {

// Shortest representation that reads back to the same double.
std::string Num(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void Row(std::ostream &os, const std::string &speaker, const std::string &id,
         const std::string &frame, double nmse, double ssim, double cwssim) {
  os << speaker << ',' << id << ',' << frame << ',' << Num(nmse) << ',' << Num(ssim) << ','
     << Num(cwssim) << '\n';
}

}  // namespace

void WriteReportCsv(std::ostream &os, const MetricReport &report,
                    const std::optional<std::string> &only_utterance) {
  os << "speaker,utterance_id,frame_index,nmse,ssim,cwssim\n";
  for (const UtteranceScores &u : report.utterances) {
    if (only_utterance && u.id != *only_utterance) continue;
    for (std::size_t t = 0; t < u.nmse.size(); ++t)
      Row(os, u.speaker, u.id, std::to_string(t + 1), u.nmse[t], u.ssim[t], u.cwssim[t]);
    Row(os, u.speaker, u.id, "mean", u.mean_nmse, u.mean_ssim, u.mean_cwssim);
  }
  if (only_utterance) return;
  for (const SpeakerScores &s : report.speakers)
    Row(os, s.speaker, "ALL", "mean", s.nmse, s.ssim, s.cwssim);
}

}  // namespace vtinv
