// core/src/lsp.cc

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

// Line spectral pair conversion.
//
// For an order-p predictor A(z) (p even) the sum and difference polynomials
//   P(z) = A(z) + z^-(p+1) A(1/z),   Q(z) = A(z) - z^-(p+1) A(1/z)
// have all their roots on the unit circle when A is minimum phase. P has a
// trivial root at z = -1 and Q at z = +1; after dividing those out both are
// symmetric of degree p, so on the unit circle
//   G(e^{jw}) = e^{-j m w} (g_m + 2 sum_{k=1..m} g_{m-k} cos(k w)),  m = p/2,
// a real Chebyshev series in x = cos(w). Its m zeros in (0, pi) from each of
// P and Q interleave and form the p line spectral frequencies.

#include <algorithm>
#include <cmath>
#include <sstream>

#include "vtinv/error.h"
#include "vtinv/frontend.h"

namespace vtinv {
namespace {

// Chebyshev coefficients b_0..b_m of the symmetric degree-2m polynomial g.
std::vector<double> ChebyshevSeries(const std::vector<double> &g) {
  const std::size_t m = (g.size() - 1) / 2;
  std::vector<double> b(m + 1);
  b[0] = g[m];
  for (std::size_t k = 1; k <= m; ++k) b[k] = 2.0 * g[m - k];
  return b;
}

double Clenshaw(const std::vector<double> &b, double x) {
  double b1 = 0.0, b2 = 0.0;
  for (std::size_t k = b.size(); k-- > 1;) {
    const double t = 2.0 * x * b1 - b2 + b[k];
    b2 = b1;
    b1 = t;
  }
  return x * b1 - b2 + b[0];
}

std::vector<double> UnitCircleRoots(const std::vector<double> &series,
                                    const LspSearch &search) {
  auto f = [&](double w) { return Clenshaw(series, std::cos(w)); };
  std::vector<double> roots;
  const int n = search.grid_points;
  double prev_w = 0.0, prev = f(0.0);
  for (int j = 1; j <= n; ++j) {
    const double w = M_PI * j / n;
    const double cur = f(w);
    if (cur == 0.0) {
      if (j < n) roots.push_back(w);
    } else if (prev != 0.0 && std::signbit(prev) != std::signbit(cur)) {
      double lo = prev_w, hi = w, f_lo = prev;
      while (hi - lo > search.tolerance) {
        const double mid = 0.5 * (lo + hi);
        const double f_mid = f(mid);
        if (f_mid == 0.0) {
          lo = hi = mid;
          break;
        }
        if (std::signbit(f_mid) == std::signbit(f_lo)) {
          lo = mid;
          f_lo = f_mid;
        } else {
          hi = mid;
        }
      }
      roots.push_back(0.5 * (lo + hi));
    }
    prev_w = w;
    prev = cur;
  }
  return roots;
}

// Multiplies `poly` (ascending powers of z^-1) by 1 - 2 cos(w) z^-1 + z^-2.
void MultiplyQuadratic(std::vector<double> *poly, double w) {
  const double c = -2.0 * std::cos(w);
  std::vector<double> out(poly->size() + 2, 0.0);
  for (std::size_t i = 0; i < poly->size(); ++i) {
    out[i] += (*poly)[i];
    out[i + 1] += c * (*poly)[i];
    out[i + 2] += (*poly)[i];
  }
  *poly = std::move(out);
}

}  // namespace

std::vector<double> CepstrumToLpc(std::span<const double> cepstra, int order) {
  if (order < 1) Fail(ErrorKind::kValidation, "LPC order must be >= 1");
  for (double c : cepstra)
    if (!std::isfinite(c)) Fail(ErrorKind::kInput, "non-finite cepstral coefficient");
  auto c = [&](int k) { return k < static_cast<int>(cepstra.size()) ? cepstra[k] : 0.0; };
  // d/dz of A = exp(-C) gives n a_n = -sum_{k=1..n} k c_k a_{n-k}.
  std::vector<double> a(static_cast<std::size_t>(order) + 1, 0.0);
  a[0] = 1.0;
  for (int n = 1; n <= order; ++n) {
    double sum = 0.0;
    for (int k = 1; k <= n; ++k) sum += k * c(k) * a[n - k];
    a[n] = -sum / n;
  }
  return a;
}

std::vector<double> LpcToLsp(std::span<const double> lpc, const LspSearch &search) {
  const int order = static_cast<int>(lpc.size()) - 1;
  if (order < 2 || order % 2 != 0)
    Fail(ErrorKind::kValidation, "LSP conversion needs an even order >= 2");
  const int m = order / 2;
  std::vector<double> sum(order + 2), diff(order + 2);
  for (int i = 0; i <= order + 1; ++i) {
    const double fwd = i <= order ? lpc[i] : 0.0;
    const double rev = order + 1 - i <= order ? lpc[order + 1 - i] : 0.0;
    sum[i] = fwd + rev;
    diff[i] = fwd - rev;
  }
  // Divide out (1 + z^-1) and (1 - z^-1).
  std::vector<double> g(order + 1), h(order + 1);
  g[0] = sum[0];
  h[0] = diff[0];
  for (int i = 1; i <= order; ++i) {
    g[i] = sum[i] - g[i - 1];
    h[i] = diff[i] + h[i - 1];
  }
  const std::vector<double> p_roots = UnitCircleRoots(ChebyshevSeries(g), search);
  const std::vector<double> q_roots = UnitCircleRoots(ChebyshevSeries(h), search);
  if (static_cast<int>(p_roots.size()) != m || static_cast<int>(q_roots.size()) != m) {
    std::ostringstream msg;
    msg << "found " << p_roots.size() + q_roots.size() << " of " << order
        << " line spectral frequencies with a " << search.grid_points
        << "-point scan (bisection tolerance " << search.tolerance
        << "); predictor is not minimum phase or roots are closer than the grid";
    Fail(ErrorKind::kNumeric, msg.str());
  }
  std::vector<double> lsp;
  lsp.reserve(order);
  for (int i = 0; i < m; ++i) {
    lsp.push_back(p_roots[i]);
    lsp.push_back(q_roots[i]);
  }
  for (int i = 1; i < order; ++i)
    if (!(lsp[i] > lsp[i - 1]))
      Fail(ErrorKind::kNumeric, "line spectral frequencies do not interleave");
  return lsp;
}

std::vector<double> LspToLpc(std::span<const double> lsp) {
  const std::size_t order = lsp.size();
  if (order < 2 || order % 2 != 0)
    Fail(ErrorKind::kValidation, "LSP vector must have even length >= 2");
  std::vector<double> p{1.0, 1.0}, q{1.0, -1.0};
  for (std::size_t i = 0; i < order; i += 2) {
    MultiplyQuadratic(&p, lsp[i]);
    MultiplyQuadratic(&q, lsp[i + 1]);
  }
  std::vector<double> a(order + 1);
  for (std::size_t i = 0; i <= order; ++i) a[i] = 0.5 * (p[i] + q[i]);
  return a;
}

std::vector<double> CepstrumToLsp(std::span<const double> cepstra, int order,
                                  const LspSearch &search) {
  if (cepstra.empty()) Fail(ErrorKind::kShape, "empty cepstrum");
  const std::vector<double> lpc = CepstrumToLpc(cepstra, order);
  const std::vector<double> lsp = LpcToLsp(lpc, search);
  std::vector<double> out;
  out.reserve(lsp.size() + 1);
  out.push_back(cepstra[0]);
  out.insert(out.end(), lsp.begin(), lsp.end());
  return out;
}

}  // namespace vtinv
