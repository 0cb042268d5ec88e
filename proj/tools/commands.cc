// tools/commands.cc

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

#include "commands.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>

#include "vtinv/corpus.h"
#include "vtinv/frontend.h"
#include "vtinv/models.h"

namespace vtinv::cli {

namespace {

struct IndexEntry {
  std::string id;
  fs::path dir;
};

// Utterance ids of a corpus (from meta.txt, falling back to the directory
// name), sorted by id.
std::vector<IndexEntry> CorpusIndex(const fs::path &root) {
  std::vector<IndexEntry> index;
  for (const fs::path &dir : ListUtteranceDirs(root)) {
    const auto meta = ReadKeyValueFile(dir / "meta.txt");
    const auto it = meta.find("id");
    index.push_back({it != meta.end() ? it->second : dir.filename().string(), dir});
  }
  if (index.empty()) Fail(ErrorKind::kSize, "corpus " + root.string() + " has no utterances");
  std::sort(index.begin(), index.end(),
            [](const IndexEntry &a, const IndexEntry &b) { return a.id < b.id; });
  return index;
}

std::vector<std::string> SelectIds(const std::vector<IndexEntry> &index, Subset subset,
                                   const SplitSizes &sizes) {
  std::vector<std::string> ids;
  for (const auto &e : index) ids.push_back(e.id);
  if (subset == Subset::kAll) return ids;
  const CorpusSplit split = SplitCorpus(ids, sizes);
  switch (subset) {
    case Subset::kTrain: return split.train;
    case Subset::kValidation: return split.validation;
    default: return split.test;
  }
}

const fs::path &DirOf(const std::vector<IndexEntry> &index, const std::string &id) {
  for (const auto &e : index)
    if (e.id == id) return e.dir;
  Fail(ErrorKind::kCoverage, "utterance " + id + " not in corpus");
}

// Re-raises an error with the utterance id in front, keeping its kind.
template <typename Fn>
auto WithUtterance(const std::string &id, Fn fn) {
  try {
    return fn();
  } catch (const Error &e) {
    Fail(e.kind(), "utterance " + id + ": " + e.what());
  }
}

void CreateDirs(const fs::path &dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) Fail(ErrorKind::kIo, "cannot create " + dir.string() + ": " + ec.message());
}

std::string Num(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

fs::path FeaturePath(const fs::path &features, const std::string &id) {
  return features / (id + ".vtf");
}

struct Pairs {
  std::vector<FeatureMatrix> features;
  std::vector<ImageSequence> targets;
};

Pairs LoadPairs(const std::vector<IndexEntry> &index, const std::vector<std::string> &ids,
                const fs::path &features, const RunConfig &config) {
  Pairs pairs;
  for (const std::string &id : ids) {
    WithUtterance(id, [&] {
      const Utterance utt = LoadUtteranceDir(DirOf(index, id), config.corpus);
      const fs::path path = FeaturePath(features, id);
      if (!fs::exists(path))
        Fail(ErrorKind::kIo, "missing feature file " + path.string() +
                                 "; run 'vtinv extract' on this corpus first");
      FeatureMatrix f = ReadFeatures(path);
      if (f.rows != utt.frames.size())
        Fail(ErrorKind::kShape, std::to_string(f.rows) + " feature rows vs " +
                                    std::to_string(utt.frames.size()) + " frames");
      pairs.features.push_back(std::move(f));
      pairs.targets.push_back(ToUnitSequence(utt.frames));
      return 0;
    });
  }
  return pairs;
}

}  // namespace

int ExitCode(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kValidation: return 2;
    case ErrorKind::kNumeric:
    case ErrorKind::kDivergence: return 4;
    default: return 3;
  }
}

Subset ParseSubset(const std::string &name) {
  if (name == "all") return Subset::kAll;
  if (name == "train") return Subset::kTrain;
  if (name == "validation") return Subset::kValidation;
  if (name == "test") return Subset::kTest;
  Fail(ErrorKind::kValidation, "unknown subset '" + name + "' (all, train, validation, test)");
}

void CmdSynth(const SynthOptions &options, const RunConfig &config) {
  if (options.utterances == 0) Fail(ErrorKind::kValidation, "--utterances must be >= 1");
  if (options.frames == 0) Fail(ErrorKind::kValidation, "--frames must be >= 1");
  if (options.out.empty()) Fail(ErrorKind::kValidation, "--out is required");
  const auto corpus =
      GenerateSyntheticCorpus(options.seed, options.utterances, options.frames, config.corpus);
  CreateDirs(options.out);
  for (const Utterance &utt : corpus) SaveUtteranceDir(options.out / utt.id, utt, config.corpus);
}

void CmdExtract(const ExtractOptions &options, const RunConfig &config) {
  const auto index = CorpusIndex(options.corpus);
  CreateDirs(options.out);
  for (const auto &entry : index) {
    WithUtterance(entry.id, [&] {
      const Utterance utt = LoadUtteranceDir(entry.dir, config.corpus);
      const FeatureMatrix f =
          ExtractFeatures(utt.audio, config.corpus.frame_shift, config.analysis, config.lsp);
      if (f.rows != utt.frames.size())
        Fail(ErrorKind::kAlignment, std::to_string(f.rows) + " feature rows vs " +
                                        std::to_string(utt.frames.size()) + " frames");
      WriteFeatures(FeaturePath(options.out, entry.id), f);
      return 0;
    });
  }
}

TrainHistory CmdTrain(const TrainOptions &options, const RunConfig &config) {
  if (options.out_model.empty()) Fail(ErrorKind::kValidation, "--out-model is required");
  if (!fs::is_directory(options.features))
    Fail(ErrorKind::kIo, "features directory '" + options.features.string() +
                             "' not found; run 'vtinv extract --corpus " +
                             options.corpus.string() + " --out " + options.features.string() +
                             "' first");
  const auto index = CorpusIndex(options.corpus);
  std::vector<std::string> ids;
  for (const auto &e : index) ids.push_back(e.id);
  const CorpusSplit split = SplitCorpus(ids, config.split);
  Pairs train = LoadPairs(index, split.train, options.features, config);
  Pairs val = LoadPairs(index, split.validation, options.features, config);

  Model model = BuildModel(options.arch, config.sizes);
  model.norm = FitNormalizer(train.features);
  for (auto &f : train.features) f = ApplyNormalizer(f, model.norm);
  for (auto &f : val.features) f = ApplyNormalizer(f, model.norm);
  model.net.Initialize(config.train.seed);
  const Dataset train_set = MakeDataset(model, train.features, train.targets);
  const Dataset val_set = MakeDataset(model, val.features, val.targets);
  if (options.log)
    *options.log << ArchitectureName(options.arch) << ": " << CountParams(model)
                 << " parameters, " << train_set.size() << " training and " << val_set.size()
                 << " validation pairs\n";

  std::ofstream batch_log;
  if (!options.batch_log.empty()) {
    batch_log.open(options.batch_log);
    if (!batch_log) Fail(ErrorKind::kIo, "cannot write " + options.batch_log.string());
    batch_log << "epoch,batch,batch_size,loss\n";
  }
  TrainHooks hooks;
  hooks.checkpoint = options.out_model;
  if (batch_log.is_open())
    hooks.on_batch = [&](const BatchEvent &e) {
      batch_log << e.epoch << ',' << e.batch << ',' << e.batch_size << ',' << Num(e.loss) << '\n';
    };
  if (options.log)
    hooks.on_epoch = [&](int epoch, double tl, double vl) {
      *options.log << "epoch " << epoch << ": train " << tl << ", validation " << vl << '\n';
    };
  const TrainHistory history = Train(&model, train_set, val_set, config.train, hooks);
  SaveModel(options.out_model, model);

  const fs::path history_path =
      options.history.empty() ? fs::path(options.out_model.string() + ".history.csv")
                              : options.history;
  std::ofstream csv(history_path);
  if (!csv) Fail(ErrorKind::kIo, "cannot write " + history_path.string());
  csv << "epoch,train_loss,val_loss,best\n";
  for (std::size_t e = 0; e < history.train_loss.size(); ++e)
    csv << e + 1 << ',' << Num(history.train_loss[e]) << ',' << Num(history.val_loss[e]) << ','
        << (int(e + 1) == history.best_epoch ? 1 : 0) << '\n';
  if (options.log)
    *options.log << "best epoch " << history.best_epoch
                 << (history.stopped_early ? " (stopped early)" : "") << '\n';
  return history;
}

void CmdPredict(const PredictOptions &options, const RunConfig &config) {
  Model model = LoadModel(options.model);
  if (options.untrained) model.net.Initialize(config.train.seed);
  if (!fs::is_directory(options.features))
    Fail(ErrorKind::kIo, "features directory '" + options.features.string() + "' not found");
  std::vector<std::string> ids;
  if (options.subset == Subset::kAll) {
    for (const auto &entry : fs::directory_iterator(options.features))
      if (entry.path().extension() == ".vtf") ids.push_back(entry.path().stem().string());
    std::sort(ids.begin(), ids.end());
  } else {
    if (options.corpus.empty())
      Fail(ErrorKind::kValidation, "--corpus is required to select a subset");
    ids = SelectIds(CorpusIndex(options.corpus), options.subset, config.split);
  }
  if (ids.empty()) Fail(ErrorKind::kSize, "no feature files to predict from");
  CreateDirs(options.out_frames);
  for (const std::string &id : ids) {
    WithUtterance(id, [&] {
      FeatureMatrix f = ReadFeatures(FeaturePath(options.features, id));
      if (!model.norm.mean.empty()) f = ApplyNormalizer(f, model.norm);
      const ImageSequence frames = PredictSequence(model, f, config.predict_batch);
      std::vector<GrayImage> gray;
      gray.reserve(frames.size());
      for (const Image &img : frames) gray.push_back(ToGrayImage(img));
      const fs::path dir = options.out_frames / id;
      std::error_code ec;
      fs::remove_all(dir, ec);  // drop frames of an earlier, longer prediction
      WriteFrameSequence(dir, gray);
      return 0;
    });
  }
}

MetricReport CmdEvaluate(const EvaluateOptions &options, const RunConfig &config) {
  if (options.out_report.empty()) Fail(ErrorKind::kValidation, "--out-report is required");
  if (!fs::is_directory(options.pred_frames))
    Fail(ErrorKind::kIo, "prediction directory '" + options.pred_frames.string() + "' not found");
  const auto index = CorpusIndex(options.ref_corpus);
  const auto ids = SelectIds(index, options.subset, config.split);
  std::vector<ReferenceUtterance> refs;
  std::map<std::string, ImageSequence> predictions;
  for (const std::string &id : ids) {
    WithUtterance(id, [&] {
      const Utterance utt = LoadUtteranceDir(DirOf(index, id), config.corpus);
      refs.push_back({utt.id, utt.speaker, ToUnitSequence(utt.frames)});
      const fs::path dir = options.pred_frames / id;
      if (fs::is_directory(dir)) predictions[id] = ToUnitSequence(ReadFrameSequence(dir));
      return 0;
    });
  }
  const MetricReport report = EvaluateCorpus(refs, predictions, config.metrics);
  if (options.utterance && !predictions.contains(*options.utterance))
    Fail(ErrorKind::kValidation, "utterance '" + *options.utterance + "' is not in the report");
  std::ofstream csv(options.out_report);
  if (!csv) Fail(ErrorKind::kIo, "cannot write " + options.out_report.string());
  WriteReportCsv(csv, report, options.utterance);
  if (!csv) Fail(ErrorKind::kIo, "write failed for " + options.out_report.string());
  return report;
}

}  // namespace vtinv::cli
