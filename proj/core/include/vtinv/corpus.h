// vtinv/corpus.h

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

#ifndef VTINV_CORPUS_H_
#define VTINV_CORPUS_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace vtinv {

/// Sampling geometry shared by audio and image streams. The defaults describe
/// the USC-TIMIT midsagittal rtMRI recordings: 20 kHz audio, 68x68 frames
/// reconstructed at 23.18 frames/s, i.e. one image per 863 audio samples.
struct CorpusConfig {
  int audio_rate = 20000;
  double frame_rate = 23.18;
  int frame_shift = 863;
  int image_size = 68;

  /// Throws kValidation unless frame_shift == round(audio_rate / frame_rate)
  /// and the rates and image size are positive.
  void Validate() const;
};

/// 8-bit grayscale image, row-major.
struct GrayImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;

  GrayImage() = default;
  GrayImage(int w, int h) : width(w), height(h), pixels(std::size_t(w) * h, 0) {}
  std::uint8_t &at(int row, int col) { return pixels[std::size_t(row) * width + col]; }
  std::uint8_t at(int row, int col) const { return pixels[std::size_t(row) * width + col]; }
  bool operator==(const GrayImage &) const = default;
};

struct Utterance {
  std::string id;
  std::string speaker;
  std::vector<std::int16_t> audio;
  std::vector<GrayImage> frames;
  bool operator==(const Utterance &) const = default;
};

struct CorpusSplit {
  std::vector<std::string> train;
  std::vector<std::string> validation;
  std::vector<std::string> test;
};

struct SplitSizes {
  std::size_t n_train = 430;
  std::size_t n_val = 20;
  std::size_t n_test = 10;
};

// --- WAV (RIFF PCM, mono, 16-bit little-endian) ------------------------------

struct WavData {
  int sample_rate = 0;
  std::vector<std::int16_t> samples;
};

WavData ReadWav(const std::filesystem::path &path);
void WriteWav(const std::filesystem::path &path, int sample_rate,
              const std::vector<std::int16_t> &samples);

// --- PGM (binary P5, maxval 255) ---------------------------------------------

GrayImage ReadPgm(const std::filesystem::path &path);
void WritePgm(const std::filesystem::path &path, const GrayImage &image);

/// "frame_00001.pgm" for index 1.
std::string FrameFileName(std::size_t one_based_index);

/// Reads frame_00001.pgm, frame_00002.pgm, ... from `dir`. Numbering must be
/// contiguous from 1; all frames must share one size.
std::vector<GrayImage> ReadFrameSequence(const std::filesystem::path &dir);
void WriteFrameSequence(const std::filesystem::path &dir,
                        const std::vector<GrayImage> &frames);

// --- Utterances ---------------------------------------------------------------

/// Loads an audio/frame pair. The frame count may differ from
/// floor(samples / frame_shift) by at most one; the longer stream is truncated
/// so that afterwards frames.size() == audio.size() / frame_shift.
Utterance LoadUtterance(const std::filesystem::path &audio_path,
                        const std::filesystem::path &frames_dir,
                        const CorpusConfig &config);

/// Loads the neutral layout: <dir>/audio.wav, <dir>/frames/*.pgm, <dir>/meta.txt.
Utterance LoadUtteranceDir(const std::filesystem::path &dir, const CorpusConfig &config);
void SaveUtteranceDir(const std::filesystem::path &dir, const Utterance &utt,
                      const CorpusConfig &config);

/// key=value lines; blank lines and '#' comments ignored.
std::map<std::string, std::string> ReadKeyValueFile(const std::filesystem::path &path);

/// Subdirectories of `root` holding a meta.txt, sorted by name.
std::vector<std::filesystem::path> ListUtteranceDirs(const std::filesystem::path &root);

/// Deterministic partition by sorted id: first n_train ids train, next n_val
/// validation, next n_test test. Throws kSize if there are too few ids.
CorpusSplit SplitCorpus(std::vector<std::string> ids, const SplitSizes &sizes);

// --- Synthetic corpus ----------------------------------------------------------

/// Number of latent articulatory dimensions driving the synthetic corpus:
/// aperture, curvature, vertical position.
inline constexpr int kLatentDims = 3;

/// Smooth latent trajectory (frames x kLatentDims, row-major, values in
/// [-1, 1]) of utterance `index` of the corpus generated from `seed`.
std::vector<double> SyntheticLatent(std::uint64_t seed, std::size_t index,
                                    std::size_t frames, double frame_rate);

/// The 25-dim spectral track (gain + 24 increasing line spectral frequencies)
/// that the latent trajectory imposes on the synthetic audio, frames x 25.
std::vector<double> SyntheticFeatureTrack(const std::vector<double> &latent,
                                          std::size_t frames);

/// Renders the tube-shaped vocal tract image for one latent state.
GrayImage RenderTube(const double *latent_state, int image_size);

/// Toy corpus whose images and audio spectra are both smooth functions of a
/// shared latent trajectory, so a learnable feature->image mapping exists.
/// Deterministic in `seed`.
std::vector<Utterance> GenerateSyntheticCorpus(std::uint64_t seed,
                                               std::size_t n_utterances,
                                               std::size_t frames_per_utterance,
                                               const CorpusConfig &config);

}  // namespace vtinv

#endif  // VTINV_CORPUS_H_
