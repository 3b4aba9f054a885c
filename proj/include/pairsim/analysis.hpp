// Copyright (c) 2026 The pairsim developers
// SPDX-License-Identifier: MIT

#pragma once

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

#include "pairsim/compiler.hpp"
#include "pairsim/dft.hpp"
#include "pairsim/models.hpp"
#include "pairsim/pauli.hpp"
#include "pairsim/simulator.hpp"
#include "pairsim/types.hpp"

namespace pairsim {

// ---------------------------------------------------------------------------
// Fidelity metrics.
// ---------------------------------------------------------------------------

/// Global-phase-invariant operator fidelity |Tr(u^dagger v)| / 2^N.
inline double operator_fidelity(const Matrix& u, const Matrix& v) {
  if (u.rows() != v.rows() || u.cols() != v.cols() || u.rows() != u.cols())
    throw ConfigError("operator_fidelity: dimension mismatch");
  const Complex tr = (u.adjoint() * v).trace();
  return std::min(1.0, std::abs(tr) / static_cast<double>(u.rows()));
}

/// State overlap probability |<psi|phi>|^2.
inline double state_fidelity(const Vector& psi, const Vector& phi) {
  if (psi.size() != phi.size()) throw ConfigError("state_fidelity: dimension mismatch");
  return std::min(1.0, std::norm(psi.dot(phi)));
}

enum class FidelityMetric { Operator, State };

inline const char* to_string(FidelityMetric m) {
  return m == FidelityMetric::Operator ? "operator" : "state";
}

inline FidelityMetric fidelity_metric_from_string(const std::string& s) {
  if (s == "operator") return FidelityMetric::Operator;
  if (s == "state") return FidelityMetric::State;
  throw ConfigError("unknown fidelity metric '" + s + "' (use operator|state)");
}

struct FidelityCurve {
  std::vector<double> abscissa;  ///< time grid
  std::vector<double> values;    ///< fidelity per point
  std::vector<double> smoothed;  ///< moving average over one fluctuation period
  FidelityMetric metric = FidelityMetric::Operator;
};

namespace detail {

/// Runs fn(i) for i in [0, count) on `workers` threads. Results must be
/// written by index so the output is independent of scheduling order. The
/// first exception thrown by any worker is rethrown on the caller.
template <typename Fn>
void parallel_for(int count, int workers, Fn&& fn) {
  if (workers <= 0) {
    workers = static_cast<int>(std::thread::hardware_concurrency());
    if (workers <= 0) workers = 1;
  }
  workers = std::min(workers, count);
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto body = [&] {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(workers));
  for (int w = 0; w < workers; ++w) pool.emplace_back(body);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

inline Vector plus_state(int n) {
  const Eigen::Index dim = Eigen::Index(1) << n;
  return Vector::Constant(dim, Complex(1.0 / std::sqrt(static_cast<double>(dim)), 0.0));
}

/// Unweighted least-squares slope of log(y) vs log(x).
inline double loglog_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 2)
    throw ConfigError("loglog fit: need at least two points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(xs.size());
  for (size_t i = 0; i < xs.size(); ++i) {
    if (!(xs[i] > 0.0) || !(ys[i] > 0.0))
      throw NumericError("loglog fit: non-positive sample");
    const double lx = std::log(xs[i]);
    const double ly = std::log(ys[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double denom = n * sxx - sx * sx;
  if (std::abs(denom) < 1e-30) throw NumericError("loglog fit: degenerate abscissa");
  return (n * sxy - sx * sy) / denom;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Fidelity sweep of the compiled pairing evolution against the exact target.
// ---------------------------------------------------------------------------

/// Compiles and executes the pairing evolution at every grid time and
/// compares with the exact propagator. State metric starts from |+>^N.
/// `workers` <= 0 selects the hardware thread count. The smoothed curve is a
/// moving average over one fluctuation period 2*pi/mean(omega) when the grid
/// is uniform (window of one sample otherwise, i.e. a copy).
inline FidelityCurve fidelity_sweep(const PairingModel& p, const HardwareModel& h,
                                    const TrotterOptions& opts,
                                    const std::vector<double>& t_grid,
                                    FidelityMetric metric = FidelityMetric::Operator,
                                    int workers = 0) {
  if (t_grid.empty()) throw ConfigError("fidelity sweep: empty time grid");
  FidelityCurve curve;
  curve.abscissa = t_grid;
  curve.values.assign(t_grid.size(), 0.0);
  curve.metric = metric;

  const Matrix h_p = pairing_hamiltonian(p);
  const Eigensystem eig = hermitian_eigendecompose(h_p);
  const Vector psi0 = detail::plus_state(p.n());

  detail::parallel_for(static_cast<int>(t_grid.size()), workers, [&](int i) {
    const double t = t_grid[static_cast<size_t>(i)];
    const GateSchedule s = compile_pairing(p, h, opts, t);
    if (metric == FidelityMetric::Operator) {
      const Matrix u = execute_unitary(s, h);
      curve.values[static_cast<size_t>(i)] = operator_fidelity(eig.propagator(t), u);
    } else {
      const ExecutionResult r = execute(s, h, psi0);
      curve.values[static_cast<size_t>(i)] =
          state_fidelity(eig.apply_propagator(t, psi0), r.state);
    }
  });

  int window = 1;
  if (t_grid.size() >= 3) {
    const double dt = t_grid[1] - t_grid[0];
    bool uniform = dt > 0.0;
    for (size_t i = 2; i < t_grid.size() && uniform; ++i)
      uniform = std::abs((t_grid[i] - t_grid[i - 1]) - dt) <= 1e-9 * std::max(1.0, std::abs(dt));
    if (uniform) {
      const double omega_bar = h.omega.mean();
      if (omega_bar > 0.0)
        window = std::max(1, static_cast<int>(std::lround(2.0 * kPi / omega_bar / dt)));
    }
  }
  curve.smoothed = moving_average(curve.values, window);
  return curve;
}

// ---------------------------------------------------------------------------
// Trotter order fit.
// ---------------------------------------------------------------------------

struct TrotterFit {
  std::vector<int> m_values;
  std::vector<double> infidelity;  ///< 1 - F at each M
  double slope = 0.0;              ///< d log(1-F) / d log M
};

/// Fits the decay order of the compiled-evolution infidelity against the
/// number of outer product steps at fixed total time.
inline TrotterFit trotter_order_fit(const PairingModel& p, const HardwareModel& h,
                                    double t_fixed, const std::vector<int>& m_list,
                                    TrotterOptions base_opts = {},
                                    FidelityMetric metric = FidelityMetric::Operator,
                                    int workers = 0) {
  if (m_list.size() < 4)
    throw ConfigError("trotter fit: need at least four step counts");
  TrotterFit fit;
  fit.m_values = m_list;
  fit.infidelity.assign(m_list.size(), 0.0);

  const Matrix h_p = pairing_hamiltonian(p);
  const Eigensystem eig = hermitian_eigendecompose(h_p);
  const Vector psi0 = detail::plus_state(p.n());

  detail::parallel_for(static_cast<int>(m_list.size()), workers, [&](int i) {
    TrotterOptions opts = base_opts;
    opts.m_intervals = m_list[static_cast<size_t>(i)];
    const GateSchedule s = compile_pairing(p, h, opts, t_fixed);
    double f;
    if (metric == FidelityMetric::Operator) {
      f = operator_fidelity(eig.propagator(t_fixed), execute_unitary(s, h));
    } else {
      const ExecutionResult r = execute(s, h, psi0);
      f = state_fidelity(eig.apply_propagator(t_fixed, psi0), r.state);
    }
    fit.infidelity[static_cast<size_t>(i)] = 1.0 - f;
  });

  std::vector<double> ms, infids;
  for (size_t i = 0; i < m_list.size(); ++i) {
    if (fit.infidelity[i] > 1e-14) {
      ms.push_back(static_cast<double>(m_list[i]));
      infids.push_back(fit.infidelity[i]);
    }
  }
  if (ms.size() < 2)
    throw NumericError(
        "trotter fit: infidelities numerically indistinguishable from zero "
        "(exact compilation); no decay order to fit");
  fit.slope = detail::loglog_slope(ms, infids);
  return fit;
}

// ---------------------------------------------------------------------------
// Splitting-defect expansion check.
// ---------------------------------------------------------------------------

/// Comparison of the exact defect of the z-field/xx-coupling splitting
///   log[ e^{-i tau W} e^{-i tau J sum xx} ] - (-i tau H)
/// against two closed forms of its first order in J: a commonly quoted
/// sin/cos form and the resummed form
///   -i (J tau / 2) [ (w tau cot(w tau) - 1) sum(xx - yy)
///                    + w tau sum(xy + yx) ].
/// Points where the principal log wraps (an eigenphase of the split product
/// near +-pi) or sits too close to the w*tau = pi resonance are excluded
/// from the aggregate ratios and flagged.
struct FluctuationReport {
  std::vector<double> tau;
  std::vector<double> defect_norm;        ///< max-abs of the exact defect
  std::vector<double> quoted_residual;    ///< defect minus sin/cos form
  std::vector<double> resummed_residual;  ///< defect minus cot form
  std::vector<bool> valid;                ///< inside the principal-log domain
  double worst_quoted_ratio = 0.0;        ///< max residual/defect over valid points
  double worst_resummed_ratio = 0.0;
  int valid_points = 0;
};

inline FluctuationReport fluctuation_expansion_check(double omega, double j, int n,
                                                     const std::vector<double>& tau_grid) {
  if (n < 2 || n > 10) throw ConfigError("fluctuation check: n out of range [2,10]");
  if (!(omega > 0.0)) throw ConfigError("fluctuation check: omega must be positive");

  const Eigen::Index dim = Eigen::Index(1) << n;
  Matrix w_field = Matrix::Zero(dim, dim);
  Matrix xx_sum = Matrix::Zero(dim, dim);
  Matrix xxmyy = Matrix::Zero(dim, dim);  // sum (xx - yy)
  Matrix cross = Matrix::Zero(dim, dim);  // sum (xy + yx)
  for (int q = 1; q <= n; ++q)
    w_field += (omega / 2.0) * pauli_term(n, {{q, Axis::Z}});
  for (int l = 1; l <= n - 1; ++l) {
    const Matrix xx = pauli_term(n, {{l, Axis::X}, {l + 1, Axis::X}});
    const Matrix yy = pauli_term(n, {{l, Axis::Y}, {l + 1, Axis::Y}});
    const Matrix xy = pauli_term(n, {{l, Axis::X}, {l + 1, Axis::Y}});
    const Matrix yx = pauli_term(n, {{l, Axis::Y}, {l + 1, Axis::X}});
    xx_sum += xx;
    xxmyy += xx - yy;
    cross += xy + yx;
  }
  const Matrix h_full = w_field + j * xx_sum;
  const Eigensystem eig_w = hermitian_eigendecompose(w_field);
  const Eigensystem eig_x = hermitian_eigendecompose(Matrix(j * xx_sum));

  FluctuationReport rep;
  const Complex im(0.0, 1.0);
  for (double tau : tau_grid) {
    if (!(tau > 0.0)) throw ConfigError("fluctuation check: tau must be positive");
    const Matrix split = eig_w.propagator(tau) * eig_x.propagator(tau);
    const Matrix defect = principal_log_unitary(split) + im * tau * h_full;

    const double wt = omega * tau;
    const Matrix quoted = im * (j * tau / 2.0) * xxmyy -
                          im * (j / (4.0 * omega)) * std::sin(2.0 * wt) * xxmyy +
                          im * (j / (4.0 * omega)) * (std::cos(2.0 * wt) - 1.0) * cross;
    const Matrix resummed =
        -im * (j * tau / 2.0) * ((wt / std::tan(wt) - 1.0) * xxmyy + wt * cross);

    // principal-log domain: every eigenphase of the split product away from
    // +-pi, and w*tau away from the pi resonance of the resummed form
    bool valid = wt < 0.95 * kPi;
    if (valid) {
      const Eigen::VectorXcd evs = split.eigenvalues();
      for (Eigen::Index i = 0; i < evs.size() && valid; ++i)
        valid = std::abs(std::arg(evs[i])) < kPi - 0.1;
    }

    rep.tau.push_back(tau);
    rep.defect_norm.push_back(max_abs(defect));
    rep.quoted_residual.push_back(max_abs(Matrix(defect - quoted)));
    rep.resummed_residual.push_back(max_abs(Matrix(defect - resummed)));
    rep.valid.push_back(valid);
    if (valid && rep.defect_norm.back() > 0.0) {
      ++rep.valid_points;
      rep.worst_quoted_ratio =
          std::max(rep.worst_quoted_ratio, rep.quoted_residual.back() / rep.defect_norm.back());
      rep.worst_resummed_ratio = std::max(
          rep.worst_resummed_ratio, rep.resummed_residual.back() / rep.defect_norm.back());
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Gate-count complexity sweep.
// ---------------------------------------------------------------------------

/// Scalar hardware description replicated across qubit counts.
struct HardwareTemplate {
  HardwareKind kind = HardwareKind::IsingLongitudinal;
  double omega = 5.0;
  double j = 0.03;
  bool freq_tunable = false;
  bool couplings_switchable = false;

  HardwareModel instantiate(int n) const {
    return make_hardware_model(kind, RealVector::Constant(n, omega),
                               RealVector::Constant(std::max(0, n - 1), j), freq_tunable,
                               couplings_switchable);
  }
};

struct ComplexitySweep {
  std::vector<int> n_values;
  std::vector<GateCount> counts;
  double fitted_exponent = 0.0;  ///< slope of log(total gates) vs log N
};

/// Fully connected pairing problem used for counting. Values are unit-scale
/// and nonzero everywhere so no term is elided.
inline PairingModel counting_pairing_model(int n) {
  RealVector eps = RealVector::Constant(n, 2.0);
  RealMatrix v = RealMatrix::Constant(n, n, -0.2);
  for (int i = 0; i < n; ++i) v(i, i) = 0.0;
  return make_pairing_model(eps, v);
}

/// Compiles the full pairing evolution per qubit count and tallies gates.
/// Only schedule construction runs; nothing is simulated.
inline ComplexitySweep complexity_sweep(const HardwareTemplate& tmpl,
                                        const std::vector<int>& n_list,
                                        TrotterOptions opts = {}, double t = 0.1) {
  if (n_list.size() < 2) throw ConfigError("complexity sweep: need at least two sizes");
  ComplexitySweep sweep;
  sweep.n_values = n_list;
  std::vector<double> xs, ys;
  for (int n : n_list) {
    if (n < 2) throw ConfigError("complexity sweep: qubit counts must be >= 2");
    const HardwareModel h = tmpl.instantiate(n);
    const PairingModel p = counting_pairing_model(n);
    const GateSchedule s = compile_pairing(p, h, opts, t);
    sweep.counts.push_back(count_gates(s));
    xs.push_back(static_cast<double>(n));
    ys.push_back(static_cast<double>(sweep.counts.back().total()));
  }
  sweep.fitted_exponent = detail::loglog_slope(xs, ys);
  return sweep;
}

}  // namespace pairsim
