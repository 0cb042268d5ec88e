// core/src/wav.cc

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

#include <cstring>
#include <fstream>
#include <iterator>

#include "vtinv/corpus.h"
#include "vtinv/error.h"

namespace vtinv {
namespace {

std::uint32_t GetU32(const unsigned char *p) {
  return std::uint32_t(p[0]) | std::uint32_t(p[1]) << 8 |
         std::uint32_t(p[2]) << 16 | std::uint32_t(p[3]) << 24;
}

std::uint16_t GetU16(const unsigned char *p) {
  return std::uint16_t(p[0] | p[1] << 8);
}

void PutU32(std::string *out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out->push_back(char((v >> (8 * i)) & 0xff));
}

void PutU16(std::string *out, std::uint16_t v) {
  out->push_back(char(v & 0xff));
  out->push_back(char(v >> 8));
}

}  // namespace

WavData ReadWav(const std::filesystem::path &path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) Fail(ErrorKind::kIo, "cannot open " + path.string());
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(is)),
                                   std::istreambuf_iterator<char>());
  const std::string where = " in " + path.string();
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0)
    Fail(ErrorKind::kFormat, "missing RIFF/WAVE header" + where);

  bool have_fmt = false;
  WavData wav;
  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const unsigned char *chunk = bytes.data() + pos;
    const std::uint32_t chunk_size = GetU32(chunk + 4);
    const std::size_t body = pos + 8;
    if (body + chunk_size > bytes.size())
      Fail(ErrorKind::kFormat, "truncated chunk" + where);
    if (std::memcmp(chunk, "fmt ", 4) == 0) {
      if (chunk_size < 16) Fail(ErrorKind::kFormat, "short fmt chunk" + where);
      const unsigned char *f = bytes.data() + body;
      const std::uint16_t format = GetU16(f);
      const std::uint16_t channels = GetU16(f + 2);
      const std::uint16_t bits = GetU16(f + 14);
      if (format != 1) Fail(ErrorKind::kFormat, "not PCM (format tag " +
                                                    std::to_string(format) + ")" + where);
      if (channels != 1)
        Fail(ErrorKind::kFormat, "expected mono, got " + std::to_string(channels) +
                                     " channels" + where);
      if (bits != 16)
        Fail(ErrorKind::kFormat, "expected 16-bit samples, got " +
                                     std::to_string(bits) + where);
      wav.sample_rate = static_cast<int>(GetU32(f + 4));
      have_fmt = true;
    } else if (std::memcmp(chunk, "data", 4) == 0) {
      if (!have_fmt) Fail(ErrorKind::kFormat, "data chunk before fmt chunk" + where);
      if (chunk_size % 2 != 0) Fail(ErrorKind::kFormat, "odd data chunk size" + where);
      wav.samples.resize(chunk_size / 2);
      for (std::size_t i = 0; i < wav.samples.size(); ++i)
        wav.samples[i] = static_cast<std::int16_t>(GetU16(bytes.data() + body + 2 * i));
      return wav;
    }
    pos = body + chunk_size + (chunk_size & 1);
  }
  Fail(ErrorKind::kFormat, "no data chunk" + where);
}

void WriteWav(const std::filesystem::path &path, int sample_rate,
              const std::vector<std::int16_t> &samples) {
  const std::uint32_t data_bytes = static_cast<std::uint32_t>(samples.size() * 2);
  std::string out;
  out.reserve(44 + data_bytes);
  out += "RIFF";
  PutU32(&out, 36 + data_bytes);
  out += "WAVEfmt ";
  PutU32(&out, 16);
  PutU16(&out, 1);  // PCM
  PutU16(&out, 1);  // mono
  PutU32(&out, static_cast<std::uint32_t>(sample_rate));
  PutU32(&out, static_cast<std::uint32_t>(sample_rate) * 2);
  PutU16(&out, 2);
  PutU16(&out, 16);
  out += "data";
  PutU32(&out, data_bytes);
  for (std::int16_t s : samples) PutU16(&out, static_cast<std::uint16_t>(s));
  std::ofstream os(path, std::ios::binary);
  if (!os || !os.write(out.data(), std::streamsize(out.size())))
    Fail(ErrorKind::kIo, "cannot write " + path.string());
}

}  // namespace vtinv
