// core/src/corpus.cc

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

#include "vtinv/corpus.h"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "vtinv/error.h"

namespace vtinv {

void CorpusConfig::Validate() const {
  if (audio_rate <= 0) Fail(ErrorKind::kValidation, "audio_rate must be positive");
  if (!(frame_rate > 0.0)) Fail(ErrorKind::kValidation, "frame_rate must be positive");
  if (image_size <= 0) Fail(ErrorKind::kValidation, "image_size must be positive");
  const long expected = std::lround(audio_rate / frame_rate);
  if (frame_shift != expected)
    Fail(ErrorKind::kValidation,
         "frame_shift " + std::to_string(frame_shift) + " != round(audio_rate / frame_rate) = " +
             std::to_string(expected));
}

Utterance LoadUtterance(const std::filesystem::path &audio_path,
                        const std::filesystem::path &frames_dir,
                        const CorpusConfig &config) {
  config.Validate();
  WavData wav = ReadWav(audio_path);
  if (wav.sample_rate != config.audio_rate)
    Fail(ErrorKind::kFormat, "sample rate " + std::to_string(wav.sample_rate) + " in " +
                                 audio_path.string() + " (expected " +
                                 std::to_string(config.audio_rate) + ")");
  std::vector<GrayImage> frames = ReadFrameSequence(frames_dir);
  if (frames.empty())
    Fail(ErrorKind::kAlignment, "no frames in " + frames_dir.string() + " (audio implies " +
                                    std::to_string(wav.samples.size() / config.frame_shift) +
                                    " frames)");
  if (frames.front().width != config.image_size || frames.front().height != config.image_size)
    Fail(ErrorKind::kFormat, "frames in " + frames_dir.string() + " are " +
                                 std::to_string(frames.front().width) + "x" +
                                 std::to_string(frames.front().height) + ", expected " +
                                 std::to_string(config.image_size) + "x" +
                                 std::to_string(config.image_size));

  const std::size_t shift = static_cast<std::size_t>(config.frame_shift);
  const std::size_t audio_frames = wav.samples.size() / shift;
  const std::size_t image_frames = frames.size();
  const std::size_t diff = audio_frames > image_frames ? audio_frames - image_frames
                                                       : image_frames - audio_frames;
  if (diff > 1 || std::min(audio_frames, image_frames) == 0)
    Fail(ErrorKind::kAlignment, "audio " + audio_path.string() + " implies " +
                                    std::to_string(audio_frames) + " frames but " +
                                    frames_dir.string() + " holds " +
                                    std::to_string(image_frames));
  const std::size_t n = std::min(audio_frames, image_frames);
  frames.resize(n);
  if (audio_frames > n) wav.samples.resize(n * shift);

  Utterance utt;
  utt.id = audio_path.parent_path().filename().string();
  utt.audio = std::move(wav.samples);
  utt.frames = std::move(frames);
  return utt;
}

std::map<std::string, std::string> ReadKeyValueFile(const std::filesystem::path &path) {
  std::ifstream is(path);
  if (!is) Fail(ErrorKind::kIo, "cannot open " + path.string());
  std::map<std::string, std::string> values;
  std::string line;
  int line_no = 0;
  auto trim = [](std::string s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return std::string();
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
  };
  while (std::getline(is, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos || eq == 0)
      Fail(ErrorKind::kFormat, path.string() + ":" + std::to_string(line_no) +
                                   ": expected key=value");
    const std::string key = trim(line.substr(0, eq));
    if (values.count(key))
      Fail(ErrorKind::kFormat, path.string() + ":" + std::to_string(line_no) +
                                   ": duplicate key '" + key + "'");
    values[key] = trim(line.substr(eq + 1));
  }
  return values;
}

Utterance LoadUtteranceDir(const std::filesystem::path &dir, const CorpusConfig &config) {
  Utterance utt = LoadUtterance(dir / "audio.wav", dir / "frames", config);
  const auto meta = ReadKeyValueFile(dir / "meta.txt");
  auto it = meta.find("id");
  utt.id = it != meta.end() ? it->second : dir.filename().string();
  it = meta.find("speaker");
  utt.speaker = it != meta.end() ? it->second : "";
  return utt;
}

void SaveUtteranceDir(const std::filesystem::path &dir, const Utterance &utt,
                      const CorpusConfig &config) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) Fail(ErrorKind::kIo, "cannot create " + dir.string() + ": " + ec.message());
  WriteWav(dir / "audio.wav", config.audio_rate, utt.audio);
  WriteFrameSequence(dir / "frames", utt.frames);
  std::ofstream meta(dir / "meta.txt");
  meta << "id=" << utt.id << "\nspeaker=" << utt.speaker << "\n";
  if (!meta) Fail(ErrorKind::kIo, "cannot write " + (dir / "meta.txt").string());
}

std::vector<std::filesystem::path> ListUtteranceDirs(const std::filesystem::path &root) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(root)) Fail(ErrorKind::kIo, "no corpus directory " + root.string());
  std::vector<fs::path> dirs;
  for (const auto &entry : fs::directory_iterator(root))
    if (entry.is_directory() && fs::exists(entry.path() / "meta.txt"))
      dirs.push_back(entry.path());
  std::sort(dirs.begin(), dirs.end());
  return dirs;
}

CorpusSplit SplitCorpus(std::vector<std::string> ids, const SplitSizes &sizes) {
  const std::size_t needed = sizes.n_train + sizes.n_val + sizes.n_test;
  if (needed > ids.size())
    Fail(ErrorKind::kSize, "split " + std::to_string(sizes.n_train) + "/" +
                               std::to_string(sizes.n_val) + "/" +
                               std::to_string(sizes.n_test) + " needs " +
                               std::to_string(needed) + " utterances, corpus has " +
                               std::to_string(ids.size()));
  std::sort(ids.begin(), ids.end());
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end())
    Fail(ErrorKind::kValidation, "duplicate utterance id '" +
                                     *std::adjacent_find(ids.begin(), ids.end()) + "'");
  CorpusSplit split;
  auto first = ids.begin();
  split.train.assign(first, first + std::ptrdiff_t(sizes.n_train));
  first += std::ptrdiff_t(sizes.n_train);
  split.validation.assign(first, first + std::ptrdiff_t(sizes.n_val));
  first += std::ptrdiff_t(sizes.n_val);
  split.test.assign(first, first + std::ptrdiff_t(sizes.n_test));
  return split;
}

}  // namespace vtinv
