// core/src/features_io.cc

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

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>

#include "vtinv/error.h"
#include "vtinv/frontend.h"

namespace vtinv {
namespace {

void PutU32(std::string *out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out->push_back(char((v >> (8 * i)) & 0xff));
}

std::uint32_t GetU32(const unsigned char *p) {
  return std::uint32_t(p[0]) | std::uint32_t(p[1]) << 8 |
         std::uint32_t(p[2]) << 16 | std::uint32_t(p[3]) << 24;
}

}  // namespace

void WriteFeatures(const std::filesystem::path &path, const FeatureMatrix &features) {
  std::string out = "VTF1";
  PutU32(&out, static_cast<std::uint32_t>(features.rows));
  PutU32(&out, static_cast<std::uint32_t>(features.cols));
  out.reserve(out.size() + features.data.size() * 4);
  for (double v : features.data)
    PutU32(&out, std::bit_cast<std::uint32_t>(static_cast<float>(v)));
  std::ofstream os(path, std::ios::binary);
  if (!os || !os.write(out.data(), std::streamsize(out.size())))
    Fail(ErrorKind::kIo, "cannot write " + path.string());
}

FeatureMatrix ReadFeatures(const std::filesystem::path &path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) Fail(ErrorKind::kIo, "cannot open " + path.string());
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(is)),
                                   std::istreambuf_iterator<char>());
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "VTF1", 4) != 0)
    Fail(ErrorKind::kFormat, "missing VTF1 header in " + path.string());
  const std::size_t rows = GetU32(bytes.data() + 4);
  const std::size_t cols = GetU32(bytes.data() + 8);
  if (bytes.size() != 12 + rows * cols * 4)
    Fail(ErrorKind::kFormat, path.string() + ": header says " + std::to_string(rows) + "x" +
                                 std::to_string(cols) + " but payload has " +
                                 std::to_string(bytes.size() - 12) + " bytes");
  FeatureMatrix features(rows, cols);
  for (std::size_t i = 0; i < rows * cols; ++i)
    features.data[i] = std::bit_cast<float>(GetU32(bytes.data() + 12 + 4 * i));
  return features;
}

}  // namespace vtinv
