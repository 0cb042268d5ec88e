// core/src/fft.cc

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

#include "vtinv/fft.h"

#include <fftw3.h>

#include <algorithm>
#include <map>
#include <mutex>
#include <tuple>

#include "vtinv/error.h"

namespace vtinv {
namespace {

// FFTW planning is not thread-safe; execution with new-array functions is.
std::mutex plan_mutex;

struct Buffer {
  explicit Buffer(std::size_t n)
      : data(static_cast<fftw_complex *>(fftw_malloc(sizeof(fftw_complex) * n))),
        size(n) {}
  ~Buffer() { fftw_free(data); }
  Buffer(const Buffer &) = delete;
  Buffer &operator=(const Buffer &) = delete;
  fftw_complex *data;
  std::size_t size;
};

// Plans are created once per (rows, cols, direction) and never destroyed.
fftw_plan GetPlan(std::size_t rows, std::size_t cols, int sign) {
  static std::map<std::tuple<std::size_t, std::size_t, int>, fftw_plan> plans;
  std::lock_guard<std::mutex> lock(plan_mutex);
  auto key = std::make_tuple(rows, cols, sign);
  auto it = plans.find(key);
  if (it != plans.end()) return it->second;
  Buffer in(rows * cols), out(rows * cols);
  fftw_plan plan;
  if (rows == 1) {
    plan = fftw_plan_dft_1d(static_cast<int>(cols), in.data, out.data, sign,
                            FFTW_ESTIMATE);
  } else {
    plan = fftw_plan_dft_2d(static_cast<int>(rows), static_cast<int>(cols),
                            in.data, out.data, sign, FFTW_ESTIMATE);
  }
  if (plan == nullptr) Fail(ErrorKind::kNumeric, "FFTW could not create a plan");
  plans.emplace(key, plan);
  return plan;
}

}  // namespace

std::vector<double> PowerSpectrum(std::span<const double> signal, std::size_t n) {
  if (n == 0 || signal.size() > n)
    Fail(ErrorKind::kShape, "FFT length " + std::to_string(n) +
                                " smaller than signal length " +
                                std::to_string(signal.size()));
  fftw_plan plan = GetPlan(1, n, FFTW_FORWARD);
  Buffer in(n), out(n);
  for (std::size_t i = 0; i < n; ++i) {
    in.data[i][0] = i < signal.size() ? signal[i] : 0.0;
    in.data[i][1] = 0.0;
  }
  fftw_execute_dft(plan, in.data, out.data);
  std::vector<double> power(n / 2 + 1);
  for (std::size_t k = 0; k < power.size(); ++k)
    power[k] = out.data[k][0] * out.data[k][0] + out.data[k][1] * out.data[k][1];
  return power;
}

std::vector<Complex> Fft2d(std::span<const Complex> data, std::size_t rows,
                           std::size_t cols, bool inverse) {
  const std::size_t n = rows * cols;
  if (data.size() != n) Fail(ErrorKind::kShape, "2-D FFT input size mismatch");
  fftw_plan plan = GetPlan(rows, cols, inverse ? FFTW_BACKWARD : FFTW_FORWARD);
  Buffer in(n), out(n);
  for (std::size_t i = 0; i < n; ++i) {
    in.data[i][0] = data[i].real();
    in.data[i][1] = data[i].imag();
  }
  fftw_execute_dft(plan, in.data, out.data);
  const double scale = inverse ? 1.0 / static_cast<double>(n) : 1.0;
  std::vector<Complex> result(n);
  for (std::size_t i = 0; i < n; ++i)
    result[i] = Complex(out.data[i][0] * scale, out.data[i][1] * scale);
  return result;
}

}  // namespace vtinv
