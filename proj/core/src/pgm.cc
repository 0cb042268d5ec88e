// core/src/pgm.cc

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

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <iterator>

#include "vtinv/corpus.h"
#include "vtinv/error.h"

namespace vtinv {
namespace {

// Reads one whitespace-delimited header token, skipping '#' comments.
bool NextToken(const std::vector<unsigned char> &bytes, std::size_t *pos,
               std::string *token) {
  std::size_t p = *pos;
  while (p < bytes.size()) {
    if (bytes[p] == '#') {
      while (p < bytes.size() && bytes[p] != '\n') ++p;
    } else if (std::isspace(bytes[p])) {
      ++p;
    } else {
      break;
    }
  }
  token->clear();
  while (p < bytes.size() && !std::isspace(bytes[p]) && bytes[p] != '#')
    token->push_back(char(bytes[p++]));
  *pos = p;
  return !token->empty();
}

int ParseHeaderInt(const std::string &token, const std::string &where) {
  if (token.empty() || token.size() > 9 ||
      !std::all_of(token.begin(), token.end(), [](char c) { return std::isdigit(c); }))
    Fail(ErrorKind::kFormat, "bad PGM header field '" + token + "'" + where);
  return std::stoi(token);
}

}  // namespace

GrayImage ReadPgm(const std::filesystem::path &path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) Fail(ErrorKind::kIo, "cannot open " + path.string());
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(is)),
                                   std::istreambuf_iterator<char>());
  const std::string where = " in " + path.string();
  std::size_t pos = 0;
  std::string token;
  if (!NextToken(bytes, &pos, &token) || token != "P5")
    Fail(ErrorKind::kFormat, "not a binary P5 PGM" + where);
  if (!NextToken(bytes, &pos, &token)) Fail(ErrorKind::kFormat, "missing width" + where);
  const int width = ParseHeaderInt(token, where);
  if (!NextToken(bytes, &pos, &token)) Fail(ErrorKind::kFormat, "missing height" + where);
  const int height = ParseHeaderInt(token, where);
  if (!NextToken(bytes, &pos, &token)) Fail(ErrorKind::kFormat, "missing maxval" + where);
  const int maxval = ParseHeaderInt(token, where);
  if (width <= 0 || height <= 0) Fail(ErrorKind::kFormat, "empty image" + where);
  if (maxval != 255)
    Fail(ErrorKind::kFormat, "maxval " + std::to_string(maxval) + " (expected 255)" + where);
  // Exactly one whitespace byte separates the header from the raster.
  if (pos >= bytes.size() || !std::isspace(bytes[pos]))
    Fail(ErrorKind::kFormat, "missing raster" + where);
  ++pos;
  GrayImage image(width, height);
  if (bytes.size() - pos < image.pixels.size())
    Fail(ErrorKind::kFormat, "truncated raster" + where);
  std::copy_n(bytes.begin() + std::ptrdiff_t(pos), image.pixels.size(),
              image.pixels.begin());
  return image;
}

void WritePgm(const std::filesystem::path &path, const GrayImage &image) {
  std::ofstream os(path, std::ios::binary);
  const std::string header = "P5\n" + std::to_string(image.width) + " " +
                             std::to_string(image.height) + "\n255\n";
  if (!os || !os.write(header.data(), std::streamsize(header.size())) ||
      !os.write(reinterpret_cast<const char *>(image.pixels.data()),
                std::streamsize(image.pixels.size())))
    Fail(ErrorKind::kIo, "cannot write " + path.string());
}

std::string FrameFileName(std::size_t one_based_index) {
  char name[32];
  std::snprintf(name, sizeof(name), "frame_%05zu.pgm", one_based_index);
  return name;
}

std::vector<GrayImage> ReadFrameSequence(const std::filesystem::path &dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) Fail(ErrorKind::kIo, "no frames directory " + dir.string());
  std::vector<std::pair<std::size_t, fs::path>> indexed;
  for (const auto &entry : fs::directory_iterator(dir)) {
    const std::string name = entry.path().filename().string();
    if (name.size() < 11 || name.rfind("frame_", 0) != 0 ||
        entry.path().extension() != ".pgm")
      continue;
    const std::string digits = name.substr(6, name.size() - 10);
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(),
                                       [](char c) { return std::isdigit(c); }))
      continue;
    indexed.emplace_back(std::stoul(digits), entry.path());
  }
  std::sort(indexed.begin(), indexed.end());
  std::vector<GrayImage> frames;
  frames.reserve(indexed.size());
  for (std::size_t i = 0; i < indexed.size(); ++i) {
    if (indexed[i].first != i + 1)
      Fail(ErrorKind::kFormat, "frame numbering gap at " + FrameFileName(i + 1) +
                                   " in " + dir.string());
    frames.push_back(ReadPgm(indexed[i].second));
    if (frames.back().width != frames.front().width ||
        frames.back().height != frames.front().height)
      Fail(ErrorKind::kFormat,
           "mixed frame sizes: " + indexed[i].second.filename().string() + " is " +
               std::to_string(frames.back().width) + "x" +
               std::to_string(frames.back().height) + ", first frame is " +
               std::to_string(frames.front().width) + "x" +
               std::to_string(frames.front().height));
  }
  return frames;
}

void WriteFrameSequence(const std::filesystem::path &dir,
                        const std::vector<GrayImage> &frames) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) Fail(ErrorKind::kIo, "cannot create " + dir.string() + ": " + ec.message());
  for (std::size_t i = 0; i < frames.size(); ++i)
    WritePgm(dir / FrameFileName(i + 1), frames[i]);
}

}  // namespace vtinv
