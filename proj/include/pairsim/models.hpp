// Copyright (c) 2026 The pairsim developers
// SPDX-License-Identifier: MIT

#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "pairsim/pauli.hpp"
#include "pairsim/types.hpp"

namespace pairsim {

// ---------------------------------------------------------------------------
// Target model: a chain of N "levels", one qubit per level, with on-site
// sigma^z terms and all-to-all xx+yy pair couplings:
//
//   H_p = sum_m (epsilon_m / 2) z_m  +  sum_{m<l} (v_ml / 2) (x_m x_l + y_m y_l)
//
// All parameters are angular frequencies; only dimensionless products such as
// epsilon*t ever enter the math, so any consistent rescaling is fine.
// ---------------------------------------------------------------------------

struct PairingModel {
  RealVector epsilon;  // per-level splitting, length N
  RealMatrix v;        // symmetric coupling matrix, zero diagonal

  int n() const { return static_cast<int>(epsilon.size()); }
};

/// Validates shapes and symmetry, folds the diagonal of v into epsilon and
/// zeroes it. This is also the fermionic-input reduction: a number-conserving
/// level occupation term shifts the splitting by the self-coupling.
inline PairingModel make_pairing_model(RealVector epsilon, RealMatrix v) {
  const int n = static_cast<int>(epsilon.size());
  if (n < 1) throw ConfigError("pairing model: need at least one level");
  if (n > 14) throw ConfigError("pairing model: more than 14 levels unsupported");
  if (v.rows() != n || v.cols() != n)
    throw ConfigError("pairing model: coupling matrix must be NxN");
  const double scale = std::max(1.0, v.cwiseAbs().maxCoeff());
  if ((v - v.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw ConfigError("pairing model: coupling matrix must be symmetric");
  for (int m = 0; m < n; ++m) {
    epsilon[m] += v(m, m);
    v(m, m) = 0.0;
  }
  // Exact symmetry from here on.
  v = ((v + v.transpose()) / 2.0).eval();
  return PairingModel{std::move(epsilon), std::move(v)};
}

struct FermionicInput {
  RealVector eps;  // bare level energies
  RealMatrix v;    // pair scattering matrix, diagonal = self energy
};

inline PairingModel from_fermionic(const FermionicInput& f) {
  return make_pairing_model(f.eps, f.v);
}

inline Matrix pairing_hamiltonian(const PairingModel& p) {
  const int n = p.n();
  const Eigen::Index dim = Eigen::Index(1) << n;
  Matrix h = Matrix::Zero(dim, dim);
  for (int m = 1; m <= n; ++m)
    h += (p.epsilon[m - 1] / 2.0) * pauli_term(n, {{m, Axis::Z}});
  for (int m = 1; m <= n; ++m)
    for (int l = m + 1; l <= n; ++l) {
      const double vml = p.v(m - 1, l - 1);
      if (vml == 0.0) continue;
      h += (vml / 2.0) * (pauli_term(n, {{m, Axis::X}, {l, Axis::X}}) +
                          pauli_term(n, {{m, Axis::Y}, {l, Axis::Y}}));
    }
  return h;
}

// ---------------------------------------------------------------------------
// Hardware model: a qubit chain with fixed single-qubit splittings and one of
// four nearest-neighbor interaction types,
//
//   H_hw = sum_q (omega_q / 2) z_q + sum_l J_l * (interaction on bond l)
//
// where the bond interaction is zz (longitudinal Ising), xx (transverse
// Ising), xx+yy (XY) or xx+yy+zz (isotropic Heisenberg).
// ---------------------------------------------------------------------------

enum class HardwareKind { IsingLongitudinal, IsingTransverse, XY, Heisenberg };

inline std::string to_string(HardwareKind k) {
  switch (k) {
    case HardwareKind::IsingLongitudinal: return "ising_longitudinal";
    case HardwareKind::IsingTransverse: return "ising_transverse";
    case HardwareKind::XY: return "xy";
    default: return "heisenberg";
  }
}

inline HardwareKind hardware_kind_from_string(const std::string& s) {
  if (s == "ising_longitudinal") return HardwareKind::IsingLongitudinal;
  if (s == "ising_transverse") return HardwareKind::IsingTransverse;
  if (s == "xy") return HardwareKind::XY;
  if (s == "heisenberg") return HardwareKind::Heisenberg;
  throw ConfigError("unknown hardware kind '" + s +
                    "' (expected ising_longitudinal, ising_transverse, xy, heisenberg)");
}

/// Per-axis couplings (J^x, J^y, J^z) on one bond, determined by the
/// interaction type and the scalar bond strength.
inline std::array<double, 3> axis_couplings(HardwareKind kind, double j) {
  switch (kind) {
    case HardwareKind::IsingLongitudinal: return {0.0, 0.0, j};
    case HardwareKind::IsingTransverse: return {j, 0.0, 0.0};
    case HardwareKind::XY: return {j, j, 0.0};
    default: return {j, j, j};
  }
}

struct HardwareModel {
  HardwareKind kind = HardwareKind::IsingLongitudinal;
  RealVector omega;  // qubit splittings, length N
  RealVector j;      // bond strengths, length N-1
  bool freq_tunable = false;
  bool couplings_switchable = false;

  int n() const { return static_cast<int>(omega.size()); }
};

inline HardwareModel make_hardware_model(HardwareKind kind, RealVector omega,
                                         RealVector j, bool freq_tunable = false,
                                         bool couplings_switchable = false) {
  const int n = static_cast<int>(omega.size());
  if (n < 1) throw ConfigError("hardware model: need at least one qubit");
  if (n > 14) throw ConfigError("hardware model: more than 14 qubits unsupported");
  if (j.size() != n - 1)
    throw ConfigError("hardware model: need exactly N-1 bond couplings");
  for (int q = 0; q < n; ++q)
    if (omega[q] <= 0.0)
      throw ConfigError("hardware model: qubit frequencies must be positive");
  return HardwareModel{kind, std::move(omega), std::move(j), freq_tunable,
                       couplings_switchable};
}

/// What a free evolution may change about the hardware, subject to the
/// tunability flags: per-qubit frequency values (freq_tunable, sign flips and
/// zeroing included) and per-bond coupling gating (couplings_switchable).
/// A bond mask of size 1 broadcasts to every bond.
struct EvolutionOverrides {
  std::optional<std::vector<double>> omega;
  std::optional<std::vector<bool>> j_on;

  bool empty() const { return !omega && !j_on; }
};

/// Resolved per-bond gate mask; validates sizes.
inline std::vector<bool> resolve_bond_mask(const EvolutionOverrides& ov, int n_bonds) {
  if (!ov.j_on) return std::vector<bool>(static_cast<size_t>(n_bonds), true);
  const auto& mask = *ov.j_on;
  if (mask.size() == 1) return std::vector<bool>(static_cast<size_t>(n_bonds), mask[0]);
  if (static_cast<int>(mask.size()) != n_bonds)
    throw ConfigError("evolution override: bond mask size must be 1 or N-1");
  return mask;
}

/// Dense hardware Hamiltonian with optional overrides. Throws ConstraintError
/// if an override needs a tunability capability the hardware lacks; this is
/// the legality check every compiled schedule ultimately passes through.
inline Matrix hardware_hamiltonian(const HardwareModel& h,
                                   const EvolutionOverrides& ov = {}) {
  const int n = h.n();
  const Eigen::Index dim = Eigen::Index(1) << n;

  RealVector omega = h.omega;
  if (ov.omega) {
    if (static_cast<int>(ov.omega->size()) != n)
      throw ConfigError("evolution override: frequency vector size must be N");
    for (int q = 0; q < n; ++q) {
      if ((*ov.omega)[q] != h.omega[q] && !h.freq_tunable)
        throw ConstraintError("frequency override requires freq_tunable hardware");
      omega[q] = (*ov.omega)[q];
    }
  }
  std::vector<bool> bond_on = resolve_bond_mask(ov, n - 1);
  for (int b = 0; b < n - 1; ++b)
    if (!bond_on[b] && !h.couplings_switchable)
      throw ConstraintError("switching a coupling off requires couplings_switchable hardware");

  Matrix ham = Matrix::Zero(dim, dim);
  for (int q = 1; q <= n; ++q)
    ham += (omega[q - 1] / 2.0) * pauli_term(n, {{q, Axis::Z}});
  static constexpr Axis axes[3] = {Axis::X, Axis::Y, Axis::Z};
  for (int l = 1; l <= n - 1; ++l) {
    if (!bond_on[l - 1]) continue;
    const auto jxyz = axis_couplings(h.kind, h.j[l - 1]);
    for (int a = 0; a < 3; ++a) {
      if (jxyz[a] == 0.0) continue;
      ham += jxyz[a] * pauli_term(n, {{l, axes[a]}, {l + 1, axes[a]}});
    }
  }
  return ham;
}

struct TrotterOptions {
  int m_intervals = 1;    // outer first-order product steps
  int g_subintervals = 1; // subdivision of fixed-coupling pi/4 pair blocks

  enum class PairRoute { Auto, FromZZ, Chain };
  PairRoute route = PairRoute::Auto;
};

inline void validate(const TrotterOptions& opts) {
  if (opts.m_intervals < 1) throw ConfigError("trotter: m must be >= 1");
  if (opts.g_subintervals < 1) throw ConfigError("trotter: g must be >= 1");
}

}  // namespace pairsim
