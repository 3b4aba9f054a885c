// Copyright (c) 2026 The pairsim developers
// SPDX-License-Identifier: MIT

#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "pairsim/models.hpp"
#include "pairsim/schedule.hpp"
#include "pairsim/types.hpp"

namespace pairsim {

// ---------------------------------------------------------------------------
// Schedule synthesis.
//
// Targets and conventions:
//   single-z   l, theta : e^{-i (theta/2) z_l}
//   pair-zz    l, phi   : e^{-i phi z_l z_{l+1}}
//   pair-xxyy  l, phi   : e^{-i phi (x_l x_{l+1} + y_l y_{l+1})}
//   full pairing t      : e^{-i t H_p}
//
// Free evolution can only run forward, so angles are realized as durations
// tau = angle / (omega_l or J_l) and negative values are handled by either a
// frequency sign flip (freq_tunable), a 2*pi wrap (single-z, fixed hardware;
// the leftover (-1)^k is a global phase), or an endpoint pi/2 conjugation
// that flips the sign of the bond term (pair blocks, two extra gates).
//
// The workhorse identity throughout is the refocusing 2-block
//   U = L E(tau/2) L^{-1} E(tau/2),
// which keeps the Hamiltonian terms commuting with the layer L and averages
// a term P to (P + L P L^{-1})/2 otherwise; pi/2 Pauli layers make that sum
// either 0 (term cancelled) or the term itself. Non-commuting remainders
// leave a second-order error in the evolved angle.
// ---------------------------------------------------------------------------

struct SynthesisTarget {
  enum class Kind { SingleZ, PairZZ, PairXXYY, FullPairing };
  Kind kind = Kind::SingleZ;
  int site = 1;           // qubit l (single-z) or bond l (pair targets)
  double angle = 0.0;

  std::string describe() const {
    switch (kind) {
      case Kind::SingleZ: return "single-z on qubit " + std::to_string(site);
      case Kind::PairZZ: return "pair-zz on bond " + std::to_string(site);
      case Kind::PairXXYY: return "pair-xxyy on bond " + std::to_string(site);
      default: return "full pairing evolution";
    }
  }
};

/// True when the backend's pair-xxyy block realizes its target exactly, in
/// which case pi/4 conjugators need no inner subdivision. Longitudinal Ising
/// pair blocks commute term-by-term; the tunable fast paths isolate the bond.
inline bool pair_block_exact(const HardwareModel& h) {
  switch (h.kind) {
    case HardwareKind::IsingLongitudinal:
      return true;
    case HardwareKind::XY: {
      if (h.couplings_switchable && h.freq_tunable) return true;
      if (h.couplings_switchable) {
        // with the bond isolated, a uniform-frequency z-sum commutes with xx+yy
        for (int q = 1; q < h.n(); ++q)
          if (h.omega[q] != h.omega[0]) return false;
        return true;
      }
      return false;
    }
    default:
      return h.couplings_switchable && h.freq_tunable;
  }
}

namespace detail {

inline std::vector<int> all_qubits(int n) {
  std::vector<int> out;
  for (int q = 1; q <= n; ++q) out.push_back(q);
  return out;
}

inline std::vector<int> rest_qubits(int n, int l) {
  std::vector<int> out;
  for (int q = 1; q <= n; ++q)
    if (q != l) out.push_back(q);
  return out;
}

inline std::vector<int> even_qubits(int n) {
  std::vector<int> out;
  for (int q = 2; q <= n; q += 2) out.push_back(q);
  return out;
}

inline std::vector<int> odd_qubits(int n) {
  std::vector<int> out;
  for (int q = 1; q <= n; q += 2) out.push_back(q);
  return out;
}

// Layer sets for the refocusing constructions. All are chosen so that the
// conjugated-and-averaged hardware terms cancel except the target term.

/// single-z: qubits sharing l's parity, l itself excluded.
inline std::vector<int> same_parity_except(int n, int l) {
  std::vector<int> out;
  for (int q = 1; q <= n; ++q)
    if (q % 2 == l % 2 && q != l) out.push_back(q);
  return out;
}

/// single-z: qubits of the opposite parity.
inline std::vector<int> opposite_parity(int n, int l) {
  std::vector<int> out;
  for (int q = 1; q <= n; ++q)
    if (q % 2 != l % 2) out.push_back(q);
  return out;
}

/// pair-zz on a zz-diagonal chain, outer layer: opposite parity left of the
/// bond, same parity right of it.
inline std::vector<int> zz_refocus_outer(int n, int l) {
  std::vector<int> out;
  for (int q = 1; q <= n; ++q)
    if ((q < l && q % 2 != l % 2) || (q > l + 1 && q % 2 == l % 2)) out.push_back(q);
  return out;
}

/// pair-zz on a zz-diagonal chain, inner layer: same parity up to l, opposite
/// parity from l+1 on (the bond endpoints are included on both sides).
inline std::vector<int> zz_refocus_inner(int n, int l) {
  std::vector<int> out;
  for (int q = 1; q <= n; ++q)
    if ((q <= l && q % 2 == l % 2) || (q >= l + 1 && q % 2 != l % 2)) out.push_back(q);
  return out;
}

/// pair extraction from a chain propagator: x-layer set that flips the sign
/// of every chain bond except bond l.
inline std::vector<int> chain_bond_flip(int n, int l) {
  std::vector<int> out;
  for (int q = 1; q <= n; ++q)
    if ((q < l && q % 2 != l % 2) || (q > l + 1 && q % 2 == l % 2)) out.push_back(q);
  return out;
}

/// pair extraction from a chain xx+yy propagator: z-layer set alternating
/// along the chain except across bond l, so only bond l keeps its sign.
inline std::vector<int> chain_xxyy_keep_bond(int n, int l) {
  std::vector<int> out;
  for (int q = 1; q <= n; ++q)
    if ((q <= l && q % 2 == l % 2) || (q > l && q % 2 == (l + 1) % 2)) out.push_back(q);
  return out;
}

/// Label pattern extracting a bare xx bond from a chain xx+yy propagator:
/// qubits rotated about x, about y, or about both (set "both" commutes with
/// neither axis term and flips both).
struct XXLabelSets {
  std::vector<int> x_only, y_only, both;
};

inline XXLabelSets xx_label_sets(int n, int l) {
  XXLabelSets s;
  for (int q = 1; q <= n; ++q) {
    const bool same = q % 2 == l % 2;
    if (same && q <= l) s.x_only.push_back(q);
    else if (!same && q < l) s.y_only.push_back(q);
    else if (same && q >= l + 2) s.both.push_back(q);
  }
  return s;
}

inline std::vector<int> set_union(std::vector<int> a, const std::vector<int>& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  return a;
}

/// Per-backend schedule emitter. All core emitters require tau >= 0; the
/// public entry points resolve signs first.
class Synthesizer {
 public:
  explicit Synthesizer(const HardwareModel& h, int g_subintervals = 1,
                       TrotterOptions::PairRoute route = TrotterOptions::PairRoute::Auto)
      : h_(h), n_(h.n()), g_(g_subintervals), route_(route) {}

  GateSchedule fresh() const { return GateSchedule(n_, to_string(h_.kind)); }

  // ---- single-z ----------------------------------------------------------

  GateSchedule single_z(int l, double theta) const {
    if (l < 1 || l > n_) throw ConfigError("single-z: qubit index out of range");
    GateSchedule s = fresh();
    if (theta == 0.0) return s;
    const double omega_l = h_.omega[l - 1];
    if (omega_l == 0.0)
      throw ConstraintError("single-z on qubit " + std::to_string(l) +
                            ": zero frequency cannot realize a z rotation");
    double tau;
    bool flip = false;
    if (theta >= 0.0) {
      tau = theta / omega_l;
    } else if (h_.freq_tunable) {
      tau = -theta / omega_l;
      flip = true;
    } else {
      // wrap: realizes the target up to a (-1)^k global phase
      const double k = std::ceil(-theta / (2.0 * kPi));
      tau = (2.0 * kPi * k + theta) / omega_l;
    }
    emit_single_z_core(s, l, tau, flip);
    return s;
  }

  // ---- pair-zz ------------------------------------------------------------

  GateSchedule pair_zz(int l, double phi) const {
    check_bond(l, "pair-zz");
    GateSchedule s = fresh();
    if (phi == 0.0) return s;
    const double tau = phi / h_.j[l - 1];
    if (tau >= 0.0) {
      emit_pair_zz_core(s, l, tau);
    } else {
      // x pi/2 on one endpoint flips the bond's z factor, hence the sign
      s.add_rotation(Axis::X, -kPi / 2, {l});
      emit_pair_zz_core(s, l, -tau);
      s.add_rotation(Axis::X, kPi / 2, {l});
    }
    return s;
  }

  // ---- pair-xxyy ----------------------------------------------------------

  GateSchedule pair_xxyy(int l, double phi) const {
    check_bond(l, "pair-xxyy");
    GateSchedule s = fresh();
    if (phi == 0.0) return s;
    const double tau = phi / h_.j[l - 1];
    if (tau >= 0.0) {
      emit_pair_xxyy_core(s, l, tau);
    } else {
      // z pi/2 on one endpoint flips x and y there, hence both bond terms
      s.add_rotation(Axis::Z, -kPi / 2, {l});
      emit_pair_xxyy_core(s, l, -tau);
      s.add_rotation(Axis::Z, kPi / 2, {l});
    }
    return s;
  }

  /// e^{-i sign (pi/4) (xx+yy)_l}, the range-extension conjugator. On
  /// backends with exact pair blocks this is a plain pair-xxyy call; on
  /// fixed-coupling backends the block is subdivided into g short segments
  /// inside a single sign conjugation.
  GateSchedule pair_pi4_block(int l, int sign) const {
    check_bond(l, "pi/4 conjugator");
    const double phi = sign * kPi / 4;
    if (pair_block_exact(h_) || g_ == 1) return pair_xxyy(l, phi);
    GateSchedule s = fresh();
    const double tau = phi / h_.j[l - 1];
    const double seg = std::abs(tau) / g_;
    if (tau < 0.0) s.add_rotation(Axis::Z, -kPi / 2, {l});
    for (int rep = 0; rep < g_; ++rep) emit_pair_xxyy_core(s, l, seg);
    if (tau < 0.0) s.add_rotation(Axis::Z, kPi / 2, {l});
    return s;
  }

 private:
  const HardwareModel& h_;
  int n_;
  int g_;
  TrotterOptions::PairRoute route_;

  void check_bond(int l, const char* what) const {
    if (l < 1 || l > n_ - 1)
      throw ConfigError(std::string(what) + ": bond index out of range");
    if (h_.j[l - 1] == 0.0)
      throw ConstraintError(std::string(what) + " on bond " + std::to_string(l) +
                            ": zero coupling cannot realize the interaction");
  }

  bool fully_tunable() const { return h_.freq_tunable && h_.couplings_switchable; }

  // override helpers
  EvolutionOverrides couplings_off() const {
    EvolutionOverrides ov;
    ov.j_on = std::vector<bool>{false};
    return ov;
  }
  EvolutionOverrides only_bond(int l, bool zero_freq) const {
    EvolutionOverrides ov;
    std::vector<bool> mask(static_cast<size_t>(n_ - 1), false);
    mask[static_cast<size_t>(l - 1)] = true;
    ov.j_on = std::move(mask);
    if (zero_freq) ov.omega = std::vector<double>(static_cast<size_t>(n_), 0.0);
    return ov;
  }
  EvolutionOverrides flipped_omega(int l) const {
    EvolutionOverrides ov;
    std::vector<double> w(h_.omega.data(), h_.omega.data() + n_);
    w[static_cast<size_t>(l - 1)] = -w[static_cast<size_t>(l - 1)];
    ov.omega = std::move(w);
    return ov;
  }
  EvolutionOverrides all_omega_flipped() const {
    EvolutionOverrides ov;
    std::vector<double> w(h_.omega.data(), h_.omega.data() + n_);
    for (double& x : w) x = -x;
    ov.omega = std::move(w);
    return ov;
  }

  // ---- shared refocusing blocks -------------------------------------------

  /// z-sum propagator extracted from an xx-coupled backend (XY / transverse
  /// Ising): z pi/2 layers on even qubits flip every bond's transverse terms
  /// across the two half-steps. Exact when the couplings commute with the
  /// z-sum (XY, uniform frequencies); second-order otherwise.
  void emit_w_block(GateSchedule& s, double tau, bool flip_l = false, int l = 0) const {
    EvolutionOverrides ov;
    if (flip_l) ov = flipped_omega(l);
    s.add_evolution(tau / 2, ov);
    s.add_rotation(Axis::Z, -kPi / 2, even_qubits(n_));
    s.add_evolution(tau / 2, ov);
    s.add_rotation(Axis::Z, kPi / 2, even_qubits(n_));
  }

  /// Heisenberg -> zz-diagonal chain propagator: the same even-site z layers
  /// cancel the transverse parts of every bond, leaving W + sum J zz.
  void emit_heis_zz_chain_block(GateSchedule& s, double tau, bool flip_l = false,
                                int l = 0) const {
    emit_w_block(s, tau, flip_l, l);  // identical layer pattern
  }

  /// Heisenberg chain zz propagator WITHOUT the z-sum: x on even, y on odd
  /// qubits flips W and the transverse bond parts, keeping sum J zz.
  void emit_heis_chain_zz(GateSchedule& s, double tau) const {
    s.add_evolution(tau / 2);
    s.add_rotation(Axis::X, -kPi / 2, even_qubits(n_));
    s.add_rotation(Axis::Y, -kPi / 2, odd_qubits(n_));
    s.add_evolution(tau / 2);
    s.add_rotation(Axis::X, kPi / 2, even_qubits(n_));
    s.add_rotation(Axis::Y, kPi / 2, odd_qubits(n_));
  }

  /// Chain xx+yy propagator, per backend.
  void emit_chain_xxyy(GateSchedule& s, double tau) const {
    switch (h_.kind) {
      case HardwareKind::XY:
        // x pi/2 everywhere flips W and yy; two half-steps average W away
        // and turn xx+yy/2 + xx-yy/2 into xx+yy.
        s.add_evolution(tau / 2);
        s.add_rotation(Axis::X, -kPi / 2, all_qubits(n_));
        s.add_evolution(tau / 2);
        s.add_rotation(Axis::X, kPi / 2, all_qubits(n_));
        return;
      case HardwareKind::Heisenberg: {
        // build from two native half-steps plus a chain-zz step; the zz
        // parts cancel and the leftover single-qubit layers compose exactly
        s.add_evolution(tau / 2);
        s.add_rotation(Axis::X, -kPi / 2, all_qubits(n_));
        s.add_evolution(tau / 2);
        s.add_rotation(Axis::X, kPi / 2, odd_qubits(n_));
        emit_heis_chain_zz(s, tau);
        s.add_rotation(Axis::X, kPi / 2, even_qubits(n_));
        return;
      }
      case HardwareKind::IsingTransverse: {
        if (!h_.freq_tunable)
          throw ConstraintError(
              "chain xx+yy on transverse Ising hardware requires freq_tunable "
              "(the construction runs one segment at flipped frequencies)");
        // one segment at -omega, z pi/4 layers turning its xx into yy; the
        // frequency flip cancels the omega*J cross terms of the two segments
        s.add_rotation(Axis::Z, -kPi / 4, all_qubits(n_));
        s.add_evolution(tau, all_omega_flipped());
        s.add_rotation(Axis::Z, kPi / 4, all_qubits(n_));
        s.add_evolution(tau);
        return;
      }
      default:
        throw ConstraintError("chain xx+yy unsupported on longitudinal Ising hardware");
    }
  }

  /// Bare xx bond from a chain xx+yy propagator via the label-layer 2-block.
  void emit_pair_xx_from_chain(GateSchedule& s, int l, double tau) const {
    const XXLabelSets labels = xx_label_sets(n_, l);
    const std::vector<int> xz = set_union(labels.x_only, labels.both);
    const std::vector<int> yz = set_union(labels.y_only, labels.both);
    emit_chain_xxyy(s, tau / 2);
    s.add_rotation(Axis::X, -kPi / 2, xz);
    s.add_rotation(Axis::Y, -kPi / 2, yz);
    emit_chain_xxyy(s, tau / 2);
    s.add_rotation(Axis::Y, kPi / 2, yz);
    s.add_rotation(Axis::X, kPi / 2, xz);
  }

  // ---- single-z core ------------------------------------------------------

  void emit_single_z_core(GateSchedule& s, int l, double tau, bool flip) const {
    if (h_.couplings_switchable) {
      if (h_.freq_tunable) {
        // everything off except omega_l (possibly sign-flipped)
        EvolutionOverrides ov;
        std::vector<double> w(static_cast<size_t>(n_), 0.0);
        w[static_cast<size_t>(l - 1)] = flip ? -h_.omega[l - 1] : h_.omega[l - 1];
        ov.omega = std::move(w);
        if (n_ > 1) ov.j_on = std::vector<bool>{false};
        s.add_evolution(tau, std::move(ov));
        return;
      }
      // couplings off; x refocusing cancels every other qubit's z term
      EvolutionOverrides ov = n_ > 1 ? couplings_off() : EvolutionOverrides{};
      s.add_evolution(tau / 2, ov);
      s.add_rotation(Axis::X, -kPi / 2, rest_qubits(n_, l));
      s.add_evolution(tau / 2, ov);
      s.add_rotation(Axis::X, kPi / 2, rest_qubits(n_, l));
      return;
    }

    switch (h_.kind) {
      case HardwareKind::IsingLongitudinal:
        emit_single_z_diag_4block(
            s, l, tau, [&](GateSchedule& out, double seg) {
              EvolutionOverrides ov;
              if (flip) ov = flipped_omega(l);
              out.add_evolution(seg, ov);
            });
        return;
      case HardwareKind::Heisenberg:
        emit_single_z_diag_4block(s, l, tau, [&](GateSchedule& out, double seg) {
          emit_heis_zz_chain_block(out, seg, flip, l);
        });
        return;
      default:  // XY, transverse Ising: strip the couplings with the w-block
        emit_w_block(s, tau / 2, flip, l);
        s.add_rotation(Axis::X, -kPi / 2, rest_qubits(n_, l));
        emit_w_block(s, tau / 2, flip, l);
        s.add_rotation(Axis::X, kPi / 2, rest_qubits(n_, l));
        return;
    }
  }

  /// Four-block parity refocusing valid on any zz-diagonal chain: cancels all
  /// z terms but qubit l's and all zz bonds. The block emitter supplies the
  /// elementary quarter-step propagator.
  template <typename EmitQuarter>
  void emit_single_z_diag_4block(GateSchedule& s, int l, double tau,
                                 EmitQuarter&& quarter) const {
    const auto t1 = same_parity_except(n_, l);
    const auto t2 = opposite_parity(n_, l);
    quarter(s, tau / 4);
    s.add_rotation(Axis::X, -kPi / 2, t2);
    quarter(s, tau / 4);
    s.add_rotation(Axis::X, -kPi / 2, t1);
    quarter(s, tau / 4);
    s.add_rotation(Axis::X, kPi / 2, t2);
    quarter(s, tau / 4);
    s.add_rotation(Axis::X, kPi / 2, t1);
  }

  // ---- pair-zz core -------------------------------------------------------

  void emit_pair_zz_core(GateSchedule& s, int l, double tau) const {
    if (fully_tunable()) {
      switch (h_.kind) {
        case HardwareKind::IsingLongitudinal:
          s.add_evolution(tau, only_bond(l, true));
          return;
        case HardwareKind::Heisenberg:
          // isolated bond terms commute; a z pi/2 on one endpoint flips the
          // transverse parts, so two half-steps leave zz alone
          s.add_evolution(tau / 2, only_bond(l, true));
          s.add_rotation(Axis::Z, -kPi / 2, {l});
          s.add_evolution(tau / 2, only_bond(l, true));
          s.add_rotation(Axis::Z, kPi / 2, {l});
          return;
        case HardwareKind::XY:
          emit_ypair_conj(s, l, [&](GateSchedule& out) {
            // isolated xx+yy; x pi/2 on one endpoint flips yy only
            out.add_evolution(tau / 2, only_bond(l, true));
            out.add_rotation(Axis::X, -kPi / 2, {l});
            out.add_evolution(tau / 2, only_bond(l, true));
            out.add_rotation(Axis::X, kPi / 2, {l});
          });
          return;
        default:  // transverse Ising: isolated bond IS e^{-i tau J xx}
          emit_ypair_conj(s, l,
                          [&](GateSchedule& out) { out.add_evolution(tau, only_bond(l, true)); });
          return;
      }
    }

    if (h_.kind == HardwareKind::IsingLongitudinal) {
      if (h_.couplings_switchable) {
        // isolate the bond; an x layer on every qubit flips W but not zz
        const EvolutionOverrides ov = only_bond(l, false);
        s.add_evolution(tau / 2, ov);
        s.add_rotation(Axis::X, -kPi / 2, all_qubits(n_));
        s.add_evolution(tau / 2, ov);
        s.add_rotation(Axis::X, kPi / 2, all_qubits(n_));
        return;
      }
      const auto s1 = zz_refocus_outer(n_, l);
      const auto s2 = zz_refocus_inner(n_, l);
      s.add_evolution(tau / 4);
      s.add_rotation(Axis::X, -kPi / 2, s1);
      s.add_evolution(tau / 4);
      s.add_rotation(Axis::X, -kPi / 2, s2);
      s.add_evolution(tau / 4);
      s.add_rotation(Axis::X, kPi / 2, s1);
      s.add_evolution(tau / 4);
      s.add_rotation(Axis::X, kPi / 2, s2);
      return;
    }

    if (h_.kind == HardwareKind::Heisenberg) {
      const auto flips = chain_bond_flip(n_, l);
      emit_heis_chain_zz(s, tau / 2);
      s.add_rotation(Axis::X, -kPi / 2, flips);
      emit_heis_chain_zz(s, tau / 2);
      s.add_rotation(Axis::X, kPi / 2, flips);
      return;
    }

    // XY / transverse Ising: zz via a y-pair pi/4 conjugation of the bare xx
    emit_ypair_conj(s, l, [&](GateSchedule& out) { emit_pair_xx_from_chain(out, l, tau); });
  }

  /// y pi/4 pair conjugation sending the bond's xx into zz.
  template <typename EmitBody>
  void emit_ypair_conj(GateSchedule& s, int l, EmitBody&& body) const {
    s.add_rotation(Axis::Y, -kPi / 4, {l, l + 1});
    body(s);
    s.add_rotation(Axis::Y, kPi / 4, {l, l + 1});
  }

  // ---- pair-xxyy core -----------------------------------------------------

  void emit_pair_xxyy_core(GateSchedule& s, int l, double tau) const {
    if (fully_tunable()) {
      switch (h_.kind) {
        case HardwareKind::XY:
          s.add_evolution(tau, only_bond(l, true));
          return;
        case HardwareKind::Heisenberg:
          // full bond step times an inverted-zz step (commuting bond terms)
          s.add_evolution(tau, only_bond(l, true));
          s.add_rotation(Axis::X, -kPi / 2, {l});
          s.add_evolution(tau / 2, only_bond(l, true));
          s.add_rotation(Axis::Z, -kPi / 2, {l});
          s.add_evolution(tau / 2, only_bond(l, true));
          s.add_rotation(Axis::Z, kPi / 2, {l});
          s.add_rotation(Axis::X, kPi / 2, {l});
          return;
        case HardwareKind::IsingTransverse:
          // xx segment plus a z pi/4 pair conjugated copy (xx -> yy)
          s.add_evolution(tau, only_bond(l, true));
          s.add_rotation(Axis::Z, -kPi / 4, {l, l + 1});
          s.add_evolution(tau, only_bond(l, true));
          s.add_rotation(Axis::Z, kPi / 4, {l, l + 1});
          return;
        default:
          break;  // longitudinal Ising: no transverse generator; fall through
      }
    }

    if (h_.kind == HardwareKind::XY && h_.couplings_switchable) {
      // isolated bond; x layers on all qubits average the z-sum away
      const EvolutionOverrides ov = only_bond(l, fully_tunable());
      s.add_evolution(tau / 2, ov);
      s.add_rotation(Axis::X, -kPi / 2, all_qubits(n_));
      s.add_evolution(tau / 2, ov);
      s.add_rotation(Axis::X, kPi / 2, all_qubits(n_));
      return;
    }

    const bool from_zz =
        h_.kind == HardwareKind::IsingLongitudinal ||
        route_ == TrotterOptions::PairRoute::FromZZ;
    if (route_ == TrotterOptions::PairRoute::Chain &&
        h_.kind == HardwareKind::IsingLongitudinal)
      throw ConstraintError(
          "pair-xxyy chain route unsupported on longitudinal Ising hardware");
    if (from_zz) {
      // xx and yy bond terms commute: conjugate two zz blocks into them
      s.add_rotation(Axis::X, -kPi / 4, {l, l + 1});
      emit_pair_zz_core(s, l, tau);
      s.add_rotation(Axis::X, kPi / 4, {l, l + 1});
      s.add_rotation(Axis::Y, -kPi / 4, {l, l + 1});
      emit_pair_zz_core(s, l, tau);
      s.add_rotation(Axis::Y, kPi / 4, {l, l + 1});
      return;
    }

    // chain route: keep only bond l of the chain xx+yy propagator
    const auto keep = chain_xxyy_keep_bond(n_, l);
    emit_chain_xxyy(s, tau / 2);
    s.add_rotation(Axis::Z, -kPi / 2, keep);
    emit_chain_xxyy(s, tau / 2);
    s.add_rotation(Axis::Z, kPi / 2, keep);
  }
};

}  // namespace detail

// ---------------------------------------------------------------------------
// Public synthesis entry points.
// ---------------------------------------------------------------------------

/// Schedule realizing e^{-i (theta/2) z_l}. Exact on longitudinal Ising and
/// on any switchable backend; second-order in the evolved time otherwise.
inline GateSchedule synth_single_z(const HardwareModel& h, int l, double theta) {
  return detail::Synthesizer(h).single_z(l, theta);
}

/// Schedule realizing e^{-i phi z_l z_{l+1}} on bond l.
inline GateSchedule synth_pair_zz(const HardwareModel& h, int l, double phi) {
  return detail::Synthesizer(h).pair_zz(l, phi);
}

/// Schedule realizing e^{-i phi (xx + yy)} on bond l.
inline GateSchedule synth_pair_xxyy(
    const HardwareModel& h, int l, double phi,
    TrotterOptions::PairRoute route = TrotterOptions::PairRoute::Auto) {
  return detail::Synthesizer(h, 1, route).pair_xxyy(l, phi);
}

/// Wraps a schedule realizing a propagator U with the bond-l hopping
/// conjugation, moving an interaction endpoint from qubit l to l+1: the
/// returned schedule realizes  C U C^dagger  with C = e^{i (pi/4)(xx+yy)_l}.
/// With fixed couplings the conjugator blocks are subdivided into g segments.
inline GateSchedule extend_range(const HardwareModel& h, const GateSchedule& base,
                                 int l, int g = 1) {
  if (l < 1 || l > h.n() - 1) throw ConfigError("extend_range: bond index out of range");
  if (g < 1) throw ConfigError("extend_range: subdivision count must be >= 1");
  detail::Synthesizer synth(h, g);
  GateSchedule out = synth.fresh();
  out.append(synth.pair_pi4_block(l, +1));  // acts first: C^dagger
  out.append(base);
  out.append(synth.pair_pi4_block(l, -1));
  return out;
}

/// Compiles e^{-i t H_p} for the pairing model onto the hardware: M outer
/// first-order product steps, each with N single-z blocks followed by the
/// pair blocks in ascending (m, l) order. Couplings beyond nearest neighbors
/// are realized by conjugating a nearest-neighbor zz block outward bond by
/// bond, then rotating the long-range zz into xx and yy halves.
inline GateSchedule compile_pairing(const PairingModel& p, const HardwareModel& h,
                                    const TrotterOptions& opts, double t) {
  validate(opts);
  if (p.n() != h.n())
    throw ConfigError("compile: model and hardware have different qubit counts");
  const int n = p.n();
  detail::Synthesizer synth(h, opts.g_subintervals, opts.route);
  GateSchedule out = synth.fresh();
  if (t == 0.0) return out;

  const double tau_step = t / opts.m_intervals;
  for (int step = 0; step < opts.m_intervals; ++step) {
    for (int m = 1; m <= n; ++m) {
      const double theta = p.epsilon[m - 1] * tau_step;
      if (theta != 0.0) out.append(synth.single_z(m, theta));
    }
    for (int m = 1; m <= n - 1; ++m) {
      for (int l = m + 1; l <= n; ++l) {
        const double v = p.v(m - 1, l - 1);
        if (v == 0.0) continue;
        const double phi = v * tau_step / 2.0;
        if (l == m + 1) {
          out.append(synth.pair_xxyy(m, phi));
          continue;
        }
        // long-range: extend the nearest-neighbor zz outward, then split
        // into the xx and yy halves by pi/4 endpoint rotations
        GateSchedule zz = synth.pair_zz(m, phi);
        for (int b = m + 1; b <= l - 1; ++b) zz = extend_range(h, zz, b, opts.g_subintervals);
        out.add_rotation(Axis::X, -kPi / 4, {m, l});
        out.append(zz);
        out.add_rotation(Axis::X, kPi / 4, {m, l});
        out.add_rotation(Axis::Y, -kPi / 4, {m, l});
        out.append(zz);
        out.add_rotation(Axis::Y, kPi / 4, {m, l});
      }
    }
  }
  return out;
}

}  // namespace pairsim
