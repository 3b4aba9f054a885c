// Copyright (c) 2026 The pairsim developers
// SPDX-License-Identifier: MIT

#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "pairsim/analysis.hpp"
#include "pairsim/compiler.hpp"
#include "pairsim/dft.hpp"
#include "pairsim/models.hpp"
#include "pairsim/pauli.hpp"
#include "pairsim/simulator.hpp"
#include "pairsim/types.hpp"

namespace pairsim {

// ---------------------------------------------------------------------------
// Ancilla spectroscopy: prepare |+> on an ancilla, entangle it with qubit 1
// by a CNOT, evolve the system register, disentangle with a second CNOT and
// measure the ancilla in the +/- basis. The + probability traces out the
// qubit-1 x-x correlation function, whose spectrum carries the level
// differences between adjacent pair-number sectors.
// ---------------------------------------------------------------------------

/// Product state from a per-qubit pattern: 'u' spin-up, 'd' spin-down,
/// '+' (|u>+|d>)/sqrt2, '-' (|u>-|d>)/sqrt2. Whitespace is ignored; the
/// first symbol is qubit 1 (most significant tensor factor).
inline Vector parse_state_pattern(int n, const std::string& pattern) {
  std::vector<char> symbols;
  for (char c : pattern) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    if (c != 'u' && c != 'd' && c != '+' && c != '-')
      throw ConfigError(std::string("state pattern: unknown symbol '") + c + "'");
    symbols.push_back(c);
  }
  if (static_cast<int>(symbols.size()) != n)
    throw ConfigError("state pattern: expected " + std::to_string(n) + " symbols, got " +
                      std::to_string(symbols.size()));
  const double s = 1.0 / std::sqrt(2.0);
  Vector psi = Vector::Ones(1);
  for (char c : symbols) {
    Vector q(2);
    switch (c) {
      case 'u': q << 1.0, 0.0; break;
      case 'd': q << 0.0, 1.0; break;
      case '+': q << s, s; break;
      default: q << s, -s; break;
    }
    Vector next(psi.size() * 2);
    for (Eigen::Index i = 0; i < psi.size(); ++i) {
      next[2 * i] = psi[i] * q[0];
      next[2 * i + 1] = psi[i] * q[1];
    }
    psi = std::move(next);
  }
  return psi;
}

/// True when the state lies in the sigma^z_1 = +1 subspace (qubit 1 up).
inline bool qubit1_up(const Vector& psi, double tol = 1e-12) {
  const Eigen::Index half = psi.size() / 2;
  return psi.tail(half).cwiseAbs().maxCoeff() <= tol;
}

struct ProtocolConfig {
  double t_max = 100.0;
  int n_samples = 256;  ///< power of two, >= 16
  Vector initial_state; ///< N-qubit register state, qubit 1 spin-up
  enum class Source { Exact, Compiled } source = Source::Exact;
  std::optional<HardwareModel> hardware;  ///< required for the compiled source
  TrotterOptions trotter;
  std::uint64_t shots = 0;  ///< 0 = exact Born probabilities
  std::uint64_t seed = 0;
};

namespace detail {

inline void validate_protocol(const PairingModel& p, const ProtocolConfig& cfg) {
  if (cfg.n_samples < 16 || (cfg.n_samples & (cfg.n_samples - 1)) != 0)
    throw ConfigError("protocol: n_samples must be a power of two >= 16");
  if (!(cfg.t_max > 0.0)) throw ConfigError("protocol: t_max must be positive");
  if (cfg.initial_state.size() != (Eigen::Index(1) << p.n()))
    throw ConfigError("protocol: initial state dimension mismatch");
  if (std::abs(cfg.initial_state.norm() - 1.0) > 1e-9)
    throw ConfigError("protocol: initial state not normalized");
  if (!qubit1_up(cfg.initial_state))
    throw ConfigError("protocol: initial state must have qubit 1 spin-up");
  if (cfg.source == ProtocolConfig::Source::Compiled && !cfg.hardware)
    throw ConfigError("protocol: compiled source requires a hardware model");
  if (p.n() + 1 > 13) throw ConfigError("protocol: too many qubits (N+1 > 13)");
}

}  // namespace detail

struct SpectroscopyProbabilities {
  std::vector<double> t;
  std::vector<double> p_plus;
  std::vector<double> p_minus;
};

/// Runs the ancilla protocol over the uniform time grid t_k = k t_max / K.
/// Probabilities are exact Born values unless cfg.shots > 0, in which case
/// each point is a binomial sample (deterministic in cfg.seed and k).
inline SpectroscopyProbabilities run_protocol(const PairingModel& p,
                                              const ProtocolConfig& cfg,
                                              int workers = 0) {
  detail::validate_protocol(p, cfg);
  const int n = p.n();
  const Eigen::Index dim = Eigen::Index(1) << n;
  const double s = 1.0 / std::sqrt(2.0);
  const int k_samples = cfg.n_samples;

  SpectroscopyProbabilities out;
  out.t.resize(static_cast<size_t>(k_samples));
  out.p_plus.resize(static_cast<size_t>(k_samples));
  out.p_minus.resize(static_cast<size_t>(k_samples));

  const Eigensystem eig = hermitian_eigendecompose(pairing_hamiltonian(p));
  const Vector psi0 = cfg.initial_state / cfg.initial_state.norm();

  detail::parallel_for(k_samples, workers, [&](int k) {
    const double t = cfg.t_max * k / k_samples;
    // ancilla |+> in slot 0: both ancilla blocks carry psi / sqrt2
    Vector full(2 * dim);
    full.head(dim) = s * psi0;
    full.tail(dim) = s * psi0;
    detail::apply_cnot(full, n + 1, 0, 1);
    Vector upper = full.head(dim);
    Vector lower = full.tail(dim);
    if (cfg.source == ProtocolConfig::Source::Exact) {
      upper = eig.apply_propagator(t, upper);
      lower = eig.apply_propagator(t, lower);
    } else {
      // each ancilla block carries half the weight; execute() expects unit
      // norm, so run the blocks normalized and restore the weight after
      const GateSchedule sched = compile_pairing(p, *cfg.hardware, cfg.trotter, t);
      upper = s * execute(sched, *cfg.hardware, Vector(upper / s)).state;
      lower = s * execute(sched, *cfg.hardware, Vector(lower / s)).state;
    }
    full.head(dim) = upper;
    full.tail(dim) = lower;
    detail::apply_cnot(full, n + 1, 0, 1);
    // measure the ancilla in the +/- basis
    double p_plus = 0.5 * (full.head(dim) + full.tail(dim)).squaredNorm();
    p_plus = std::min(1.0, std::max(0.0, p_plus));
    if (cfg.shots > 0) {
      std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed),
                        static_cast<std::uint32_t>(cfg.seed >> 32),
                        static_cast<std::uint32_t>(k)};
      std::mt19937_64 rng(seq);
      std::binomial_distribution<std::uint64_t> dist(cfg.shots, p_plus);
      p_plus = static_cast<double>(dist(rng)) / static_cast<double>(cfg.shots);
    }
    out.t[static_cast<size_t>(k)] = t;
    out.p_plus[static_cast<size_t>(k)] = p_plus;
    out.p_minus[static_cast<size_t>(k)] = 1.0 - p_plus;
  });
  return out;
}

/// The closed-form prediction the protocol realizes:
///   P_0^+(t) = 1/2 + ( <psi| sx_1(t) sx_1(0) |psi> + c.c. ) / 4
/// with sx_1(t) in the Heisenberg picture of the pairing Hamiltonian.
inline double correlation_formula(const PairingModel& p, const Vector& psi, double t) {
  if (psi.size() != (Eigen::Index(1) << p.n()))
    throw ConfigError("correlation formula: state dimension mismatch");
  const Eigensystem eig = hermitian_eigendecompose(pairing_hamiltonian(p));
  const Matrix sx1 = pauli_term(p.n(), {{1, Axis::X}});
  const Vector flipped = sx1 * psi;
  const Vector evolved = eig.apply_propagator(t, flipped);
  const Vector back = eig.apply_propagator(-t, Vector(sx1 * evolved));
  const Complex corr = psi.dot(back);  // <psi| U^dag sx U sx |psi>
  return 0.5 + 0.5 * corr.real();
}

// ---------------------------------------------------------------------------
// Sector spectra and gap extraction.
// ---------------------------------------------------------------------------

/// Eigenvalues of the pairing Hamiltonian split by the conserved number of
/// spin-up qubits n; levels[n] is ascending, sector dimension binomial(N,n).
struct EigenSectorTable {
  int n_qubits = 0;
  std::vector<std::vector<double>> levels;
};

inline EigenSectorTable sector_eigenvalues(const PairingModel& p) {
  const int n = p.n();
  const Eigen::Index dim = Eigen::Index(1) << n;
  const Matrix h = pairing_hamiltonian(p);
  EigenSectorTable table;
  table.n_qubits = n;
  table.levels.assign(static_cast<size_t>(n) + 1, {});
  std::vector<std::vector<Eigen::Index>> members(static_cast<size_t>(n) + 1);
  for (Eigen::Index idx = 0; idx < dim; ++idx) {
    const int ups = n - static_cast<int>(__builtin_popcountll(static_cast<unsigned long long>(idx)));
    members[static_cast<size_t>(ups)].push_back(idx);
  }
  for (int ups = 0; ups <= n; ++ups) {
    const auto& ids = members[static_cast<size_t>(ups)];
    Matrix sub(ids.size(), ids.size());
    for (size_t a = 0; a < ids.size(); ++a)
      for (size_t b = 0; b < ids.size(); ++b) sub(a, b) = h(ids[a], ids[b]);
    const Eigensystem eig = hermitian_eigendecompose(sub);
    table.levels[static_cast<size_t>(ups)].assign(eig.values.data(),
                                                  eig.values.data() + eig.values.size());
  }
  return table;
}

struct PairGap {
  int n = 0;            ///< pair-number sector of the excited levels
  double two_delta = 0; ///< gap between the two lowest sector-n lines
};

/// Recovers 2*Delta_n from measured peaks: the two lowest sector-n levels
/// referenced to the sector-(n-1) ground level give two lines; each line is
/// matched to a peak within one bin (peaks carry |omega|, the table supplies
/// the sign) and the gap is their signed difference. Sectors without both
/// lines matched are omitted rather than guessed.
inline std::vector<PairGap> extract_gaps(const std::vector<SpectralPeak>& peaks,
                                         const EigenSectorTable& table,
                                         double bin_width) {
  std::vector<PairGap> gaps;
  auto match_signed = [&](double line) -> std::optional<double> {
    std::optional<double> best;
    double best_err = bin_width + 1e-12;
    for (const auto& pk : peaks) {
      const double err = std::abs(pk.omega - std::abs(line));
      if (err <= best_err) {
        best_err = err;
        best = line < 0.0 ? -pk.omega : pk.omega;
      }
    }
    return best;
  };
  for (int n = 1; n <= table.n_qubits; ++n) {
    const auto& lower = table.levels[static_cast<size_t>(n - 1)];
    const auto& upper = table.levels[static_cast<size_t>(n)];
    if (lower.empty() || upper.size() < 2) continue;
    const double ref = lower.front();
    const auto m0 = match_signed(upper[0] - ref);
    const auto m1 = match_signed(upper[1] - ref);
    if (m0 && m1) gaps.push_back({n, *m1 - *m0});
  }
  return gaps;
}

struct SpectroscopyResult {
  SpectroscopyProbabilities series;
  Spectrum spectrum;
  std::vector<SpectralPeak> peaks;
  EigenSectorTable sectors;
  std::vector<PairGap> gaps;
};

/// Full pipeline: protocol series, DFT, peak finding and gap extraction.
inline SpectroscopyResult run_spectroscopy(const PairingModel& p, const ProtocolConfig& cfg,
                                           double peak_threshold = 0.05, int workers = 0) {
  SpectroscopyResult result;
  result.series = run_protocol(p, cfg, workers);
  result.spectrum = dft_spectrum(result.series.p_plus, cfg.t_max);
  result.peaks = find_peaks(result.spectrum, peak_threshold);
  result.sectors = sector_eigenvalues(p);
  result.gaps = extract_gaps(result.peaks, result.sectors, result.spectrum.bin_width);
  return result;
}

}  // namespace pairsim
