// Copyright (c) 2026 The pairsim developers
// SPDX-License-Identifier: MIT

#pragma once

#include <cmath>
#include <vector>

#include <unsupported/Eigen/FFT>

#include "pairsim/types.hpp"

namespace pairsim {

/// Discrete spectrum of a uniformly sampled real series over [0, t_max).
/// Sample k sits at t_k = k * t_max / K; angular frequency of bin j is
/// 2*pi*j / t_max, and bins above K/2 alias to negative frequencies.
struct Spectrum {
  std::vector<double> omega;      ///< angular frequency per bin
  std::vector<double> amplitude;  ///< |X_j| / K (a pure cosine of amplitude a shows a/2)
  std::vector<double> phase;      ///< arg X_j
  std::vector<Complex> coeff;     ///< raw DFT coefficients
  double bin_width = 0.0;         ///< 2*pi / t_max
  int size() const { return static_cast<int>(coeff.size()); }
};

struct SpectralPeak {
  double omega = 0.0;
  double amplitude = 0.0;
  int bin = 0;
};

/// Plain rectangular-window DFT. The grid must be uniform; t_max is the full
/// record length (one sample spacing past the last point).
inline Spectrum dft_spectrum(const std::vector<double>& series, double t_max) {
  if (series.size() < 2) throw ConfigError("dft: need at least two samples");
  if (!(t_max > 0.0)) throw ConfigError("dft: record length must be positive");
  const int k = static_cast<int>(series.size());
  Eigen::FFT<double> fft;
  std::vector<Complex> coeff;
  fft.fwd(coeff, series);
  Spectrum out;
  out.coeff = std::move(coeff);
  out.bin_width = 2.0 * kPi / t_max;
  out.omega.resize(series.size());
  out.amplitude.resize(series.size());
  out.phase.resize(series.size());
  for (int j = 0; j < k; ++j) {
    const int signed_j = j <= k / 2 ? j : j - k;
    out.omega[j] = out.bin_width * signed_j;
    out.amplitude[j] = std::abs(out.coeff[j]) / k;
    out.phase[j] = std::arg(out.coeff[j]);
  }
  return out;
}

/// Local maxima of the positive-frequency amplitude spectrum above a
/// threshold fraction of the largest nonzero-frequency amplitude. Maxima in
/// adjacent bins are merged into the larger one.
inline std::vector<SpectralPeak> find_peaks(const Spectrum& sp,
                                            double threshold_frac = 0.05) {
  const int k = sp.size();
  const int top = k / 2;
  double max_amp = 0.0;
  for (int j = 1; j <= top; ++j) max_amp = std::max(max_amp, sp.amplitude[j]);
  const double cut = threshold_frac * max_amp;
  std::vector<SpectralPeak> peaks;
  for (int j = 1; j <= top; ++j) {
    const double a = sp.amplitude[j];
    if (a < cut || a == 0.0) continue;
    const double left = sp.amplitude[j - 1];
    const double right = j + 1 <= top ? sp.amplitude[j + 1] : 0.0;
    if (a < left || a < right) continue;
    if (!peaks.empty() && j - peaks.back().bin <= 1) {
      if (a > peaks.back().amplitude) peaks.back() = {sp.omega[j], a, j};
      continue;
    }
    peaks.push_back({sp.omega[j], a, j});
  }
  return peaks;
}

/// Centered moving average with a window of `window` samples, truncated at
/// the edges (the window shrinks near the boundary instead of padding).
inline std::vector<double> moving_average(const std::vector<double>& xs, int window) {
  if (window < 1) throw ConfigError("moving_average: window must be >= 1");
  const int n = static_cast<int>(xs.size());
  const int half = window / 2;
  std::vector<double> out(xs.size());
  for (int i = 0; i < n; ++i) {
    const int lo = std::max(0, i - half);
    const int hi = std::min(n - 1, i + half);
    double acc = 0.0;
    for (int j = lo; j <= hi; ++j) acc += xs[j];
    out[i] = acc / (hi - lo + 1);
  }
  return out;
}

}  // namespace pairsim
