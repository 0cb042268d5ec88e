// core/src/model_io.cc

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

// Container layout, one manifest line per entry:
//
//   VTMODEL 1
//   architecture fcdnn
//   size input_dim 25            (one line per ArchSizes field)
//   norm_mean 25 v0 v1 ...       (count 0 when no normalizer)
//   norm_std 25 v0 v1 ...
//   layers 11
//   layer dense 25 1000 -        (kind, in, out, reshape target or "-")
//   tensors 12
//   tensor 0.dense.weight f64 25x1000 0   (name, dtype, shape, offset in values)
//   payload 8658624              (total f64 values)
//   end
//
// followed by the payload as little-endian IEEE doubles.

#include <bit>
#include <charconv>
#include <cstring>
#include <fstream>
#include <sstream>

#include "vtinv/error.h"
#include "vtinv/train.h"

namespace vtinv {

namespace {

constexpr const char *kMagic = "VTMODEL 1";

std::string FormatDouble(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

[[noreturn]] void Corrupt(const std::filesystem::path &path, const std::string &what) {
  Fail(ErrorKind::kCorruption, path.string() + ": " + what);
}

std::string ShapeToken(const nn::Shape &shape) {
  if (shape.empty()) return "-";
  std::string s;
  for (std::size_t i = 0; i < shape.size(); ++i) s += (i ? "x" : "") + std::to_string(shape[i]);
  return s;
}

void AppendDoubles(std::ostringstream &os, const char *key, const std::vector<double> &v) {
  os << key << ' ' << v.size();
  for (double x : v) os << ' ' << FormatDouble(x);
  os << '\n';
}

// Reads manifest tokens with corruption errors instead of stream states.
class Manifest {
 public:
  Manifest(std::string text, std::filesystem::path path)
      : in_(std::move(text)), path_(std::move(path)) {}

  std::string Word(const char *what) {
    std::string w;
    if (!(in_ >> w)) Corrupt(path_, std::string("manifest ends before ") + what);
    return w;
  }
  void Expect(const char *key) {
    const std::string w = Word(key);
    if (w != key) Corrupt(path_, "expected '" + std::string(key) + "', found '" + w + "'");
  }
  std::size_t Count(const char *what) {
    const std::string w = Word(what);
    std::size_t v = 0;
    const auto res = std::from_chars(w.data(), w.data() + w.size(), v);
    if (res.ec != std::errc() || res.ptr != w.data() + w.size())
      Corrupt(path_, std::string("bad ") + what + " '" + w + "'");
    return v;
  }
  double Real(const char *what) {
    const std::string w = Word(what);
    double v = 0.0;
    const auto res = std::from_chars(w.data(), w.data() + w.size(), v);
    if (res.ec != std::errc() || res.ptr != w.data() + w.size())
      Corrupt(path_, std::string("bad ") + what + " '" + w + "'");
    return v;
  }
  std::vector<double> Reals(const char *key) {
    Expect(key);
    const std::size_t n = Count(key);
    if (n > 1'000'000) Corrupt(path_, std::string(key) + " count too large");
    std::vector<double> v(n);
    for (auto &x : v) x = Real(key);
    return v;
  }

 private:
  std::istringstream in_;
  std::filesystem::path path_;
};

}  // namespace

void SaveModel(const std::filesystem::path &path, const Model &model) {
  std::ostringstream os;
  os << kMagic << '\n';
  os << "architecture " << ArchitectureName(model.arch) << '\n';
  for (const ArchSizeField &f : ArchSizeFields())
    os << "size " << f.name << ' ' << model.sizes.*f.member << '\n';
  AppendDoubles(os, "norm_mean", model.norm.mean);
  AppendDoubles(os, "norm_std", model.norm.std);

  const std::vector<nn::LayerSpec> specs = model.net.specs();
  os << "layers " << specs.size() << '\n';
  for (const nn::LayerSpec &s : specs)
    os << "layer " << nn::LayerKindName(s.kind) << ' ' << s.in << ' ' << s.out << ' '
       << ShapeToken(s.target) << '\n';

  const auto params = model.net.Parameters();
  const auto names = model.net.ParameterNames();
  os << "tensors " << params.size() << '\n';
  std::size_t offset = 0;
  for (std::size_t i = 0; i < params.size(); ++i) {
    os << "tensor " << names[i] << " f64 " << ShapeToken(params[i]->shape()) << ' ' << offset
       << '\n';
    offset += params[i]->size();
  }
  os << "payload " << offset << "\nend\n";

  std::string payload(offset * sizeof(double), '\0');
  char *dst = payload.data();
  for (const nn::Tensor *p : params)
    for (double v : p->values()) {
      std::uint64_t bits = std::bit_cast<std::uint64_t>(v);
      for (int b = 0; b < 8; ++b) *dst++ = static_cast<char>((bits >> (8 * b)) & 0xff);
    }

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) Fail(ErrorKind::kIo, "cannot write model file " + path.string());
  const std::string manifest = os.str();
  out.write(manifest.data(), static_cast<std::streamsize>(manifest.size()));
  out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
  if (!out) Fail(ErrorKind::kIo, "write failed for " + path.string());
}

Model LoadModel(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorKind::kIo, "cannot open model file " + path.string());
  const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (bytes.rfind(std::string(kMagic) + "\n", 0) != 0) Corrupt(path, "not a vtinv model file");
  const std::size_t end = bytes.find("\nend\n");
  if (end == std::string::npos) Corrupt(path, "manifest has no end marker");
  const std::size_t payload_start = end + 5;
  Manifest m(bytes.substr(0, payload_start), path);

  m.Expect("VTMODEL");
  m.Expect("1");
  m.Expect("architecture");
  const std::string arch_name = m.Word("architecture");
  Architecture arch;
  try {
    arch = ParseArchitecture(arch_name);
  } catch (const Error &) {
    Corrupt(path, "unknown architecture '" + arch_name + "'");
  }
  ArchSizes sizes;
  for (const ArchSizeField &f : ArchSizeFields()) {
    m.Expect("size");
    m.Expect(f.name);
    sizes.*f.member = m.Count(f.name);
  }
  NormStats norm;
  norm.mean = m.Reals("norm_mean");
  norm.std = m.Reals("norm_std");
  if (norm.mean.size() != norm.std.size() ||
      (!norm.mean.empty() && norm.mean.size() != sizes.input_dim))
    Corrupt(path, "normalizer width does not match input_dim");

  Model model;
  try {
    model = BuildModel(arch, sizes);
  } catch (const Error &e) {
    Corrupt(path, std::string("manifest sizes do not build: ") + e.what());
  }
  model.norm = std::move(norm);

  const std::vector<nn::LayerSpec> specs = model.net.specs();
  m.Expect("layers");
  if (m.Count("layer count") != specs.size())
    Corrupt(path, "layer count does not match the architecture");
  for (std::size_t i = 0; i < specs.size(); ++i) {
    m.Expect("layer");
    const std::string kind = m.Word("layer kind");
    const std::size_t lin = m.Count("layer input"), lout = m.Count("layer output");
    const std::string target = m.Word("layer target");
    const nn::LayerSpec &s = specs[i];
    if (kind != nn::LayerKindName(s.kind) || lin != s.in || lout != s.out ||
        target != ShapeToken(s.target))
      Corrupt(path, "layer " + std::to_string(i) + " does not match the architecture");
  }

  const auto params = model.net.Parameters();
  const auto names = model.net.ParameterNames();
  m.Expect("tensors");
  if (m.Count("tensor count") != params.size())
    Corrupt(path, "tensor count does not match the architecture");
  std::size_t offset = 0;
  for (std::size_t i = 0; i < params.size(); ++i) {
    m.Expect("tensor");
    const std::string name = m.Word("tensor name");
    const std::string dtype = m.Word("tensor dtype");
    const std::string shape = m.Word("tensor shape");
    const std::size_t off = m.Count("tensor offset");
    if (name != names[i]) Corrupt(path, "tensor " + std::to_string(i) + " is named " + name);
    if (dtype != "f64") Corrupt(path, "tensor " + name + " has dtype " + dtype);
    if (shape != ShapeToken(params[i]->shape()))
      Corrupt(path, "tensor " + name + " has shape " + shape + ", expected " +
                        ShapeToken(params[i]->shape()));
    if (off != offset) Corrupt(path, "tensor " + name + " has offset " + std::to_string(off));
    offset += params[i]->size();
  }
  m.Expect("payload");
  if (m.Count("payload") != offset) Corrupt(path, "payload size does not match the tensors");
  m.Expect("end");

  const std::size_t have = bytes.size() - payload_start;
  if (have != offset * sizeof(double))
    Corrupt(path, "payload holds " + std::to_string(have) + " bytes, manifest declares " +
                      std::to_string(offset * sizeof(double)));
  const unsigned char *src = reinterpret_cast<const unsigned char *>(bytes.data() + payload_start);
  for (nn::Tensor *p : params)
    for (double &v : p->values()) {
      std::uint64_t bits = 0;
      for (int b = 0; b < 8; ++b) bits |= std::uint64_t(*src++) << (8 * b);
      v = std::bit_cast<double>(bits);
    }
  return model;
}

}  // namespace vtinv
