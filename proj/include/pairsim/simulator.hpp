// Copyright (c) 2026 The pairsim developers
// SPDX-License-Identifier: MIT

#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <variant>

#include "pairsim/linalg.hpp"
#include "pairsim/models.hpp"
#include "pairsim/schedule.hpp"
#include "pairsim/types.hpp"

namespace pairsim {

struct ExecutionResult {
  enum class Mode { Unitary, State };
  Mode mode = Mode::Unitary;
  Matrix unitary;   // set when mode == Unitary
  Vector state;     // set when mode == State
  long instruction_count_executed = 0;
};

namespace detail {

/// Canonical key for one override set, so identical free evolutions within a
/// schedule share a single eigendecomposition. Local to each execute() call.
inline std::string override_key(const EvolutionOverrides& ov) {
  if (ov.empty()) return "base";
  std::ostringstream os;
  if (ov.omega) {
    os << "w:";
    for (double w : *ov.omega) os << fmt_g17(w) << ',';
  }
  if (ov.j_on) {
    os << "|j:";
    for (bool b : *ov.j_on) os << (b ? '1' : '0');
  }
  return os.str();
}

class EvolutionCache {
 public:
  explicit EvolutionCache(const HardwareModel& h) : h_(h) {}

  const Eigensystem& decomposition(const EvolutionOverrides& ov) {
    const std::string key = override_key(ov);
    auto it = cache_.find(key);
    if (it == cache_.end())
      it = cache_.emplace(key, hermitian_eigendecompose(hardware_hamiltonian(h_, ov))).first;
    return it->second;
  }

 private:
  const HardwareModel& h_;
  std::map<std::string, Eigensystem> cache_;
};

// In-place single-qubit gate on one tensor slot of a state vector.
// Slot 0 is the most significant bit of the basis index.
inline void apply_single_qubit(Vector& psi, int n_slots, int slot,
                               const Eigen::Matrix2cd& g) {
  const Eigen::Index stride = Eigen::Index(1) << (n_slots - 1 - slot);
  const Eigen::Index dim = psi.size();
  for (Eigen::Index base = 0; base < dim; base += 2 * stride) {
    for (Eigen::Index off = 0; off < stride; ++off) {
      const Eigen::Index i0 = base + off, i1 = i0 + stride;
      const Complex a = psi[i0], b = psi[i1];
      psi[i0] = g(0, 0) * a + g(0, 1) * b;
      psi[i1] = g(1, 0) * a + g(1, 1) * b;
    }
  }
}

inline void apply_cnot(Vector& psi, int n_slots, int control_slot, int target_slot) {
  const Eigen::Index cbit = Eigen::Index(1) << (n_slots - 1 - control_slot);
  const Eigen::Index tbit = Eigen::Index(1) << (n_slots - 1 - target_slot);
  for (Eigen::Index i = 0; i < psi.size(); ++i)
    if ((i & cbit) && !(i & tbit)) std::swap(psi[i], psi[i + tbit]);
}

}  // namespace detail

/// Executes a schedule as a dense unitary (no initial state) or applies it to
/// an initial state vector without ever forming the full product. The first
/// listed instruction acts first. Pure: all caching is call-local.
inline ExecutionResult execute(const GateSchedule& s, const HardwareModel& h,
                               std::optional<Vector> initial = std::nullopt) {
  if (h.n() != s.n_qubits())
    throw ConfigError("execute: hardware size does not match schedule");
  const Eigen::Index dim = s.dim();
  const int n_slots = s.n_qubits() + (s.allows_cnot() ? 1 : 0);
  detail::EvolutionCache cache(h);

  ExecutionResult result;
  result.mode = initial ? ExecutionResult::Mode::State : ExecutionResult::Mode::Unitary;

  if (initial) {
    if (initial->size() != dim)
      throw ConfigError("execute: initial state dimension mismatch");
    if (std::abs(initial->norm() - 1.0) > 1e-12)
      throw NumericError("execute: initial state not normalized");
    Vector psi = *initial;
    for (const auto& ins : s.items()) {
      if (const auto* rot = std::get_if<RotationLayer>(&ins)) {
        Eigen::Matrix2cd g = std::cos(rot->angle) * Eigen::Matrix2cd::Identity() +
                             Complex(0, 1) * std::sin(rot->angle) * pauli_matrix(rot->axis);
        for (int q : rot->qubits)
          detail::apply_single_qubit(psi, n_slots,
                                     detail::tensor_slot(q, s.allows_cnot()), g);
      } else if (const auto* cx = std::get_if<CnotGate>(&ins)) {
        detail::apply_cnot(psi, n_slots, detail::tensor_slot(cx->control, s.allows_cnot()),
                           detail::tensor_slot(cx->target, s.allows_cnot()));
      } else {
        const auto& ev = std::get<FreeEvolution>(ins);
        const Eigensystem& es = cache.decomposition(ev.overrides);
        if (s.allows_cnot()) {
          const Eigen::Index half = dim / 2;  // ancilla is the top bit
          psi.head(half) = es.apply_propagator(ev.duration, psi.head(half));
          psi.tail(half) = es.apply_propagator(ev.duration, psi.tail(half));
        } else {
          psi = es.apply_propagator(ev.duration, psi);
        }
      }
      ++result.instruction_count_executed;
    }
    if (std::abs(psi.norm() - 1.0) > 1e-12)
      throw NumericError("execute: state norm drifted beyond tolerance");
    result.state = std::move(psi);
    return result;
  }

  Matrix u = Matrix::Identity(dim, dim);
  for (const auto& ins : s.items()) {
    Matrix m;
    if (const auto* ev = std::get_if<FreeEvolution>(&ins)) {
      m = cache.decomposition(ev->overrides).propagator(ev->duration);
      if (s.allows_cnot()) m = kron(Matrix::Identity(2, 2), m);
    } else {
      m = instruction_unitary(ins, h, s);
    }
    u = m * u;
    ++result.instruction_count_executed;
  }
  if (!is_unitary(u, 1e-10))
    throw NumericError("execute: unitarity drifted beyond tolerance");
  result.unitary = std::move(u);
  return result;
}

/// Convenience wrapper returning just the schedule's unitary.
inline Matrix execute_unitary(const GateSchedule& s, const HardwareModel& h) {
  return execute(s, h).unitary;
}

/// e^{-i t H} for a Hermitian generator; the exact reference every compiled
/// schedule is compared against.
inline Matrix exact_propagator(const Matrix& hamiltonian, double t) {
  return hermitian_expm(hamiltonian, t);
}

}  // namespace pairsim
