// Copyright (c) 2026 The pairsim developers
// SPDX-License-Identifier: MIT

#include <cmath>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "pairsim/analysis.hpp"

using namespace pairsim;

namespace {

PairingModel two_level_model() {
  RealVector eps(2);
  eps << 3.0, 1.0;
  RealMatrix v = RealMatrix::Zero(2, 2);
  v(0, 1) = v(1, 0) = 2.0;
  return make_pairing_model(eps, v);
}

PairingModel diagonal_model(int n) {
  RealVector eps(n);
  for (int i = 0; i < n; ++i) eps[i] = 1.0 + 0.5 * i;
  return make_pairing_model(eps, RealMatrix::Zero(n, n));
}

HardwareModel il(int n) {
  return make_hardware_model(HardwareKind::IsingLongitudinal,
                             RealVector::Constant(n, 5.0),
                             RealVector::Constant(n - 1, 0.03), false, false);
}

}  // namespace

// ---------------------------------------------------------------------------
// metrics
// ---------------------------------------------------------------------------

TEST_CASE("operator fidelity ignores global phase", "[analysis]") {
  const Matrix u = hermitian_expm(pauli_term(2, {{1, Axis::Z}}), 0.3);
  CHECK(operator_fidelity(u, u) == Catch::Approx(1.0).margin(1e-14));
  CHECK(operator_fidelity(u, Matrix(Complex(0, 1) * u)) ==
        Catch::Approx(1.0).margin(1e-14));
  const Matrix v = hermitian_expm(pauli_term(2, {{1, Axis::X}}), 0.9);
  CHECK(operator_fidelity(u, v) < 1.0 - 1e-3);
  CHECK_THROWS_AS(operator_fidelity(u, Matrix::Identity(8, 8)), ConfigError);
}

TEST_CASE("state fidelity is the overlap probability", "[analysis]") {
  Vector a = Vector::Zero(4), b = Vector::Zero(4);
  a[0] = 1.0;
  b[1] = 1.0;
  CHECK(state_fidelity(a, a) == Catch::Approx(1.0));
  CHECK(state_fidelity(a, b) == Catch::Approx(0.0).margin(1e-15));
  CHECK(state_fidelity(a, Vector(Complex(0, 1) * a)) == Catch::Approx(1.0));
  CHECK_THROWS_AS(state_fidelity(a, Vector::Zero(8)), ConfigError);
  CHECK(fidelity_metric_from_string("operator") == FidelityMetric::Operator);
  CHECK(fidelity_metric_from_string("state") == FidelityMetric::State);
  CHECK_THROWS_AS(fidelity_metric_from_string("bogus"), ConfigError);
}

// ---------------------------------------------------------------------------
// fidelity sweep
// ---------------------------------------------------------------------------

TEST_CASE("diagonal models compile exactly at any step count", "[analysis]") {
  const PairingModel p = diagonal_model(3);
  TrotterOptions opts;  // a single step suffices: every term commutes
  const std::vector<double> grid = {0.5, 1.5, 4.0, 9.0};
  const FidelityCurve curve = fidelity_sweep(p, il(3), opts, grid);
  for (double f : curve.values) CHECK(f == Catch::Approx(1.0).margin(1e-11));
}

TEST_CASE("fidelity sweep fills both metrics and the smoothed curve",
          "[analysis]") {
  const PairingModel p = two_level_model();
  TrotterOptions opts;
  opts.m_intervals = 20;
  std::vector<double> grid;
  for (int k = 1; k <= 24; ++k) grid.push_back(0.1 * k);

  for (FidelityMetric metric : {FidelityMetric::Operator, FidelityMetric::State}) {
    const FidelityCurve curve = fidelity_sweep(p, il(2), opts, grid, metric);
    REQUIRE(curve.values.size() == grid.size());
    REQUIRE(curve.smoothed.size() == grid.size());
    CHECK(curve.metric == metric);
    for (double f : curve.values) {
      CHECK(f > 0.95);
      CHECK(f <= 1.0);
    }
  }
  CHECK_THROWS_AS(fidelity_sweep(p, il(2), opts, {}), ConfigError);
}

TEST_CASE("fidelity sweep is independent of the worker count", "[analysis]") {
  const PairingModel p = two_level_model();
  TrotterOptions opts;
  opts.m_intervals = 8;
  const std::vector<double> grid = {0.3, 0.6, 0.9, 1.2, 1.5, 1.8};
  const FidelityCurve serial = fidelity_sweep(p, il(2), opts, grid,
                                              FidelityMetric::Operator, 1);
  const FidelityCurve parallel = fidelity_sweep(p, il(2), opts, grid,
                                                FidelityMetric::Operator, 4);
  for (size_t i = 0; i < grid.size(); ++i)
    CHECK(serial.values[i] == parallel.values[i]);
}

// ---------------------------------------------------------------------------
// trotter order fit
// ---------------------------------------------------------------------------

TEST_CASE("step-count fit recovers the first-order decay exponent", "[analysis]") {
  const PairingModel p = two_level_model();
  const TrotterFit fit = trotter_order_fit(p, il(2), 0.5, {10, 20, 40, 80});
  INFO("slope=" << fit.slope);
  CHECK(fit.slope > -2.3);
  CHECK(fit.slope < -1.7);
  REQUIRE(fit.infidelity.size() == 4);
  CHECK(fit.infidelity.front() > fit.infidelity.back());
}

TEST_CASE("step-count fit refuses exactly compiled models", "[analysis]") {
  const PairingModel p = diagonal_model(2);
  CHECK_THROWS_AS(trotter_order_fit(p, il(2), 0.5, {5, 10, 20, 40}), NumericError);
  CHECK_THROWS_AS(trotter_order_fit(two_level_model(), il(2), 0.5, {10, 20}),
                  ConfigError);
}

TEST_CASE("log-log slope fit", "[analysis]") {
  std::vector<double> xs = {1.0, 2.0, 4.0, 8.0}, ys;
  for (double x : xs) ys.push_back(3.0 * std::pow(x, 1.7));
  CHECK(detail::loglog_slope(xs, ys) == Catch::Approx(1.7).margin(1e-12));
  CHECK_THROWS_AS(detail::loglog_slope({1.0, 2.0}, {0.0, 1.0}), NumericError);
  CHECK_THROWS_AS(detail::loglog_slope({2.0, 2.0}, {1.0, 1.0}), NumericError);
  CHECK_THROWS_AS(detail::loglog_slope({1.0}, {1.0}), ConfigError);
}

// ---------------------------------------------------------------------------
// splitting-defect expansion
// ---------------------------------------------------------------------------

TEST_CASE("resummed defect form stays first-order accurate", "[analysis]") {
  std::vector<double> taus;
  for (int k = 1; k <= 11; ++k) taus.push_back(0.05 * k);  // w*tau up to 2.75
  const FluctuationReport rep = fluctuation_expansion_check(5.0, 0.03, 2, taus);
  REQUIRE(rep.valid_points == static_cast<int>(taus.size()));
  INFO("worst resummed ratio=" << rep.worst_resummed_ratio
                               << ", worst quoted ratio=" << rep.worst_quoted_ratio);
  CHECK(rep.worst_resummed_ratio < 0.1);
  // the sin/cos form drifts off the exact defect well before the resonance
  CHECK(rep.worst_quoted_ratio > 0.1);
}

TEST_CASE("defect check flags the resonance region", "[analysis]") {
  // w*tau = 3.75 exceeds the 0.95*pi principal-log guard
  const FluctuationReport rep = fluctuation_expansion_check(5.0, 0.03, 2, {0.1, 0.75});
  REQUIRE(rep.valid.size() == 2);
  CHECK(rep.valid[0]);
  CHECK_FALSE(rep.valid[1]);
  CHECK(rep.valid_points == 1);
}

TEST_CASE("defect check validates its arguments", "[analysis]") {
  CHECK_THROWS_AS(fluctuation_expansion_check(5.0, 0.03, 1, {0.1}), ConfigError);
  CHECK_THROWS_AS(fluctuation_expansion_check(0.0, 0.03, 2, {0.1}), ConfigError);
  CHECK_THROWS_AS(fluctuation_expansion_check(5.0, 0.03, 2, {0.0}), ConfigError);
}

// ---------------------------------------------------------------------------
// gate-count scaling
// ---------------------------------------------------------------------------

TEST_CASE("gate counts grow as the fourth power of the chain length",
          "[analysis]") {
  HardwareTemplate tmpl;  // longitudinal Ising, fixed everything
  const ComplexitySweep sweep = complexity_sweep(tmpl, {4, 6, 8, 10});
  INFO("exponent=" << sweep.fitted_exponent);
  CHECK(sweep.fitted_exponent > 3.3);
  CHECK(sweep.fitted_exponent < 4.6);
  for (size_t i = 1; i < sweep.counts.size(); ++i)
    CHECK(sweep.counts[i].total() > sweep.counts[i - 1].total());
}

TEST_CASE("exact pair blocks make the counts subdivision-independent",
          "[analysis]") {
  HardwareTemplate xy_tunable;
  xy_tunable.kind = HardwareKind::XY;
  xy_tunable.freq_tunable = true;
  xy_tunable.couplings_switchable = true;
  TrotterOptions coarse, fine;
  coarse.g_subintervals = 1;
  fine.g_subintervals = 5;
  const ComplexitySweep a = complexity_sweep(xy_tunable, {4, 6}, coarse);
  const ComplexitySweep b = complexity_sweep(xy_tunable, {4, 6}, fine);
  CHECK(a.counts[0].total() == b.counts[0].total());
  CHECK(a.counts[1].total() == b.counts[1].total());

  HardwareTemplate heis_fixed;
  heis_fixed.kind = HardwareKind::Heisenberg;
  const ComplexitySweep c = complexity_sweep(heis_fixed, {4, 6}, coarse);
  const ComplexitySweep d = complexity_sweep(heis_fixed, {4, 6}, fine);
  CHECK(d.counts[0].total() > c.counts[0].total());
}

TEST_CASE("complexity sweep validates sizes", "[analysis]") {
  HardwareTemplate tmpl;
  CHECK_THROWS_AS(complexity_sweep(tmpl, {4}), ConfigError);
  CHECK_THROWS_AS(complexity_sweep(tmpl, {1, 4}), ConfigError);
}

// ---------------------------------------------------------------------------
// spectral helpers
// ---------------------------------------------------------------------------

TEST_CASE("dft locates a pure cosine", "[analysis]") {
  const int k_samples = 64;
  const double t_max = 8.0;
  const double f_bin = 5.0;  // five full periods over the record
  std::vector<double> series(k_samples);
  for (int k = 0; k < k_samples; ++k) {
    const double t = t_max * k / k_samples;
    series[static_cast<size_t>(k)] = 0.8 * std::cos(2.0 * kPi * f_bin * t / t_max);
  }
  const Spectrum sp = dft_spectrum(series, t_max);
  REQUIRE(sp.size() == k_samples);
  CHECK(sp.bin_width == Catch::Approx(2.0 * kPi / t_max));
  CHECK(sp.omega[5] == Catch::Approx(5.0 * 2.0 * kPi / t_max));
  CHECK(sp.amplitude[5] == Catch::Approx(0.4).margin(1e-12));  // one-sided

  const std::vector<SpectralPeak> peaks = find_peaks(sp);
  REQUIRE(peaks.size() == 1);
  CHECK(peaks[0].bin == 5);
  CHECK(peaks[0].omega == Catch::Approx(sp.omega[5]));
}

TEST_CASE("moving average preserves constants and length", "[analysis]") {
  const std::vector<double> xs = {1.0, 1.0, 1.0, 1.0, 1.0};
  CHECK(moving_average(xs, 3) == xs);
  CHECK(moving_average(xs, 1) == xs);
  CHECK(moving_average(xs, 99).size() == xs.size());
  const std::vector<double> ys = {0.0, 2.0, 0.0, 2.0, 0.0};
  const std::vector<double> sm = moving_average(ys, 2);
  REQUIRE(sm.size() == ys.size());
  // linear smoothing keeps the mean
  double mean_in = 0, mean_out = 0;
  for (size_t i = 0; i < ys.size(); ++i) {
    mean_in += ys[i];
    mean_out += sm[i];
  }
  CHECK(mean_out == Catch::Approx(mean_in).epsilon(0.25));
}
