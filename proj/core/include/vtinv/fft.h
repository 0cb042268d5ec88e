// vtinv/fft.h

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

#ifndef VTINV_FFT_H_
#define VTINV_FFT_H_

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace vtinv {

using Complex = std::complex<double>;

// Thin wrappers over FFTW (estimate-mode plans, so results are deterministic).
// All functions are safe to call from several threads.

/// Power spectrum |X_k|^2 for k = 0..n/2 of a real signal zero-padded to n.
std::vector<double> PowerSpectrum(std::span<const double> signal, std::size_t n);

/// Unnormalized 2-D DFT of a row-major rows x cols complex array.
/// `inverse` uses the +i sign convention and divides by rows*cols.
std::vector<Complex> Fft2d(std::span<const Complex> data, std::size_t rows,
                           std::size_t cols, bool inverse);

}  // namespace vtinv

#endif  // VTINV_FFT_H_
