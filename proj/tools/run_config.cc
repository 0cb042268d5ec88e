// tools/run_config.cc

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

#include "run_config.h"

#include <charconv>
#include <functional>
#include <map>
#include <type_traits>

#include "vtinv/error.h"

namespace vtinv::cli {

namespace {

template <typename T>
T ParseValue(const std::string &key, const std::string &text) {
  auto bad = [&]() -> T {
    Fail(ErrorKind::kValidation, "config key '" + key + "': cannot parse '" + text + "'");
  };
  if constexpr (std::is_same_v<T, bool>) {
    if (text == "true" || text == "1") return true;
    if (text == "false" || text == "0") return false;
    return bad();
  } else if constexpr (std::is_same_v<T, CwSsimMode>) {
    if (text == "windowed") return CwSsimMode::kWindowed;
    if (text == "global") return CwSsimMode::kGlobal;
    return bad();
  } else {
    T value{};
    const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || res.ec != std::errc() || res.ptr != text.data() + text.size())
      return bad();
    return value;
  }
}

template <typename T>
std::string FormatValue(const T &value) {
  if constexpr (std::is_same_v<T, bool>) {
    return value ? "true" : "false";
  } else if constexpr (std::is_same_v<T, CwSsimMode>) {
    return value == CwSsimMode::kGlobal ? "global" : "windowed";
  } else {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
  }
}

struct Entry {
  std::string key;
  std::string help;
  std::function<void(RunConfig &, const std::string &)> set;
  std::function<std::string(const RunConfig &)> get;
};

template <typename T>
Entry Field(std::string key, std::string help, T &(*access)(RunConfig &)) {
  Entry e{key, std::move(help), nullptr, nullptr};
  e.set = [key, access](RunConfig &c, const std::string &v) { access(c) = ParseValue<T>(key, v); };
  e.get = [access](const RunConfig &c) {
    RunConfig copy = c;
    return FormatValue(access(copy));
  };
  return e;
}

#define VTINV_FIELD(key, help, expr) \
  Field(key, help, +[](RunConfig &c) -> auto & { return expr; })

const std::vector<Entry> &Entries() {
  static const std::vector<Entry> entries = [] {
    std::vector<Entry> e = {
        VTINV_FIELD("audio_rate", "audio sampling rate in Hz", c.corpus.audio_rate),
        VTINV_FIELD("frame_rate", "image frames per second", c.corpus.frame_rate),
        VTINV_FIELD("frame_shift", "audio samples per image frame", c.corpus.frame_shift),
        VTINV_FIELD("image_size", "side of the square frames in pixels", c.corpus.image_size),
        VTINV_FIELD("mcep_order", "mel-cepstral order (features are order+1 wide)",
                    c.analysis.order),
        VTINV_FIELD("mcep_alpha", "all-pass frequency warping factor", c.analysis.alpha),
        VTINV_FIELD("window_len", "Hann analysis window length in samples",
                    c.analysis.window_len),
        VTINV_FIELD("fft_len", "FFT length of the analysis", c.analysis.fft_len),
        VTINV_FIELD("floor_db", "power spectrum floor in dB", c.analysis.floor_db),
        VTINV_FIELD("lsp_grid_points", "root scan points on the unit circle",
                    c.lsp.grid_points),
        VTINV_FIELD("lsp_tolerance", "bisection tolerance in radians", c.lsp.tolerance),
        VTINV_FIELD("lsp_stabilize", "retry unstable frames with bandwidth expansion",
                    c.lsp.stabilize),
        VTINV_FIELD("split_train", "training utterances (first by sorted id)",
                    c.split.n_train),
        VTINV_FIELD("split_validation", "validation utterances", c.split.n_val),
        VTINV_FIELD("split_test", "test utterances", c.split.n_test),
    };
    for (const ArchSizeField &f : ArchSizeFields()) {
      const std::string key = f.name;
      // input_dim and image_size follow mcep_order and the corpus image_size.
      if (key == "input_dim" || key == "image_size") continue;
      const auto member = f.member;
      static const std::map<std::string, std::string> kHelp = {
          {"fc_width", "FC-DNN hidden layer width"},
          {"fc_depth", "FC-DNN hidden layer count"},
          {"cnn_dense", "CNN first dense layer width"},
          {"cnn_filters", "CNN channels of the quarter-size grid and first convolution"},
          {"lstm_fc_width", "LSTM model per-step dense width"},
          {"lstm_fc_depth", "LSTM model per-step dense layer count"},
          {"lstm_hidden", "LSTM hidden units per layer"},
          {"lstm_layers", "stacked LSTM layers"},
          {"seq_len", "LSTM input window length in frames"},
      };
      Entry entry{key, kHelp.at(key), nullptr, nullptr};
      entry.set = [key, member](RunConfig &c, const std::string &v) {
        c.sizes.*member = ParseValue<std::size_t>(key, v);
      };
      entry.get = [member](const RunConfig &c) { return FormatValue(c.sizes.*member); };
      e.push_back(std::move(entry));
    }
    std::vector<Entry> rest = {
        VTINV_FIELD("max_epochs", "epoch cap", c.train.max_epochs),
        VTINV_FIELD("patience", "epochs without validation improvement before stopping",
                    c.train.patience),
        VTINV_FIELD("batch_size", "training pairs per Adam step", c.train.batch_size),
        VTINV_FIELD("lr", "Adam learning rate", c.train.lr),
        VTINV_FIELD("beta1", "Adam first-moment decay", c.train.beta1),
        VTINV_FIELD("beta2", "Adam second-moment decay", c.train.beta2),
        VTINV_FIELD("epsilon", "Adam denominator stabilizer", c.train.epsilon),
        VTINV_FIELD("seed", "weight initialization and shuffling seed", c.train.seed),
        VTINV_FIELD("shuffle", "reshuffle training pairs every epoch", c.train.shuffle),
        VTINV_FIELD("lstm_clip_norm", "global gradient-norm clip for LSTM models (<=0 off)",
                    c.train.lstm_clip_norm),
        VTINV_FIELD("predict_batch", "frames per forward pass at prediction", c.predict_batch),
        VTINV_FIELD("ssim_window", "SSIM Gaussian window side", c.metrics.ssim.window),
        VTINV_FIELD("ssim_sigma", "SSIM Gaussian standard deviation in pixels",
                    c.metrics.ssim.sigma),
        VTINV_FIELD("ssim_alpha", "SSIM luminance exponent", c.metrics.ssim.alpha),
        VTINV_FIELD("ssim_beta", "SSIM contrast exponent", c.metrics.ssim.beta),
        VTINV_FIELD("ssim_gamma", "SSIM structure exponent", c.metrics.ssim.gamma),
        VTINV_FIELD("ssim_k1", "SSIM luminance stabilizer factor", c.metrics.ssim.k1),
        VTINV_FIELD("ssim_k2", "SSIM contrast stabilizer factor", c.metrics.ssim.k2),
        VTINV_FIELD("cwssim_scales", "Gabor scales", c.metrics.cwssim.scales),
        VTINV_FIELD("cwssim_orientations", "Gabor orientations", c.metrics.cwssim.orientations),
        VTINV_FIELD("cwssim_frequency", "finest Gabor center frequency in cycles/pixel",
                    c.metrics.cwssim.finest_frequency),
        VTINV_FIELD("cwssim_bandwidth", "Gabor radial bandwidth in octaves",
                    c.metrics.cwssim.bandwidth_octaves),
        VTINV_FIELD("cwssim_window", "CW-SSIM coefficient window side", c.metrics.cwssim.window),
        VTINV_FIELD("cwssim_k", "CW-SSIM stabilizer K", c.metrics.cwssim.k),
        VTINV_FIELD("cwssim_mode", "windowed or global", c.metrics.cwssim.mode),
    };
    for (auto &r : rest) e.push_back(std::move(r));
    return e;
  }();
  return entries;
}

#undef VTINV_FIELD

const Entry &Find(const std::string &key) {
  for (const Entry &e : Entries())
    if (e.key == key) return e;
  Fail(ErrorKind::kValidation, "unknown config key '" + key + "' (run 'vtinv config' for the list)");
}

}  // namespace

void RunConfig::Set(const std::string &key, const std::string &value) { Find(key).set(*this, value); }

std::string RunConfig::Get(const std::string &key) const { return Find(key).get(*this); }

void RunConfig::Validate() const {
  corpus.Validate();
  analysis.Validate();
  if (lsp.grid_points < 2 * analysis.order)
    Fail(ErrorKind::kValidation, "lsp_grid_points must be at least twice mcep_order");
  if (!(lsp.tolerance > 0.0)) Fail(ErrorKind::kValidation, "lsp_tolerance must be positive");
  if (split.n_train == 0 || split.n_val == 0)
    Fail(ErrorKind::kValidation, "split_train and split_validation must be positive");
  if (sizes.input_dim != std::size_t(analysis.order) + 1)
    Fail(ErrorKind::kValidation, "input_dim must equal mcep_order + 1");
  if (sizes.image_size != std::size_t(corpus.image_size))
    Fail(ErrorKind::kValidation, "image_size must match the corpus frame size");
  train.Validate();
  if (predict_batch == 0) Fail(ErrorKind::kValidation, "predict_batch must be >= 1");
  metrics.ssim.Validate();
  metrics.cwssim.Validate();
}

std::vector<std::string> RunConfigKeys() {
  std::vector<std::string> keys;
  for (const Entry &e : Entries()) keys.push_back(e.key);
  return keys;
}

RunConfig LoadRunConfig(const std::optional<std::filesystem::path> &path,
                        const std::vector<std::string> &overrides) {
  RunConfig config;
  if (path) {
    if (!std::filesystem::exists(*path))
      Fail(ErrorKind::kIo, "config file " + path->string() + " does not exist");
    for (const auto &[key, value] : ReadKeyValueFile(*path)) config.Set(key, value);
  }
  for (const std::string &kv : overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0)
      Fail(ErrorKind::kValidation, "override '" + kv + "' is not key=value");
    config.Set(kv.substr(0, eq), kv.substr(eq + 1));
  }
  // image_size is one quantity seen by both the corpus and the networks.
  config.sizes.image_size = static_cast<std::size_t>(config.corpus.image_size);
  config.sizes.input_dim = static_cast<std::size_t>(config.analysis.order) + 1;
  config.Validate();
  return config;
}

void PrintRunConfig(std::ostream &os, const RunConfig &config) {
  for (const Entry &e : Entries()) {
    os << e.key << '=' << e.get(config) << "  # " << e.help << '\n';
  }
}

}  // namespace vtinv::cli
