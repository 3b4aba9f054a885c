// Copyright (c) 2026 The pairsim developers
// SPDX-License-Identifier: MIT

#pragma once

#include <cctype>
#include <initializer_list>
#include <string>
#include <utility>

#include "pairsim/linalg.hpp"
#include "pairsim/types.hpp"

namespace pairsim {

enum class Axis { X, Y, Z };

inline char axis_char(Axis a) {
  switch (a) {
    case Axis::X: return 'x';
    case Axis::Y: return 'y';
    default: return 'z';
  }
}

inline Axis axis_from_char(char c) {
  switch (std::tolower(static_cast<unsigned char>(c))) {
    case 'x': return Axis::X;
    case 'y': return Axis::Y;
    case 'z': return Axis::Z;
    default: throw ConfigError(std::string("unknown Pauli axis '") + c + "'");
  }
}

inline Eigen::Matrix2cd pauli_matrix(Axis a) {
  Eigen::Matrix2cd m;
  switch (a) {
    case Axis::X: m << 0, 1, 1, 0; break;
    case Axis::Y: m << 0, Complex(0, -1), Complex(0, 1), 0; break;
    case Axis::Z: m << 1, 0, 0, -1; break;
  }
  return m;
}

/// Scaled tensor product of single-qubit Pauli factors. labels[q-1] is the
/// factor on qubit q, one of 'i', 'x', 'y', 'z'. Qubit 1 is the most
/// significant tensor slot: basis index b places qubit 1's bit at the top,
/// and bit 0 means spin up (sigma^z eigenvalue +1). The string is Hermitian
/// exactly when the coefficient is real.
struct PauliString {
  std::string labels;
  Complex coefficient = 1.0;

  explicit PauliString(int n_qubits) : labels(static_cast<size_t>(n_qubits), 'i') {
    if (n_qubits < 1) throw ConfigError("PauliString: need at least one qubit");
    if (n_qubits > 14) throw ConfigError("PauliString: more than 14 qubits unsupported");
  }
  PauliString(int n_qubits, std::initializer_list<std::pair<int, Axis>> factors,
              Complex coeff = 1.0)
      : PauliString(n_qubits) {
    for (const auto& [q, a] : factors) set(q, a);
    coefficient = coeff;
  }
  /// From a label string like "ixzy" (qubit 1 first).
  explicit PauliString(std::string label_string, Complex coeff = 1.0)
      : PauliString(static_cast<int>(label_string.size())) {
    for (size_t k = 0; k < label_string.size(); ++k) {
      char c = static_cast<char>(std::tolower(static_cast<unsigned char>(label_string[k])));
      if (c != 'i') axis_from_char(c);  // validate
      labels[k] = c;
    }
    coefficient = coeff;
  }

  int n_qubits() const { return static_cast<int>(labels.size()); }

  void set(int qubit, Axis a) {
    if (qubit < 1 || qubit > n_qubits())
      throw ConfigError("PauliString: qubit index out of range");
    labels[static_cast<size_t>(qubit - 1)] = axis_char(a);
  }

  char label(int qubit) const { return labels[static_cast<size_t>(qubit - 1)]; }

  int weight() const {
    int w = 0;
    for (char c : labels) w += (c != 'i');
    return w;
  }
};

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline Matrix pauli_to_matrix(const PauliString& p) {
  Matrix m = Matrix::Identity(1, 1);
  for (char c : p.labels) {
    Eigen::Matrix2cd f = (c == 'i') ? Eigen::Matrix2cd::Identity()
                                    : pauli_matrix(axis_from_char(c));
    m = kron(m, Matrix(f));
  }
  return p.coefficient * m;
}

/// Single-qubit Pauli product with phase: a * b = phase * c.
inline std::pair<Complex, char> pauli_mul(char a, char b) {
  if (a == 'i') return {1.0, b};
  if (b == 'i') return {1.0, a};
  if (a == b) return {1.0, 'i'};
  // xy = iz and cyclic; reversed order flips the sign.
  static constexpr char next[3] = {'y', 'z', 'x'};
  auto idx = [](char c) { return c == 'x' ? 0 : c == 'y' ? 1 : 2; };
  if (next[idx(a)] == b) {
    static constexpr char third[3] = {'z', 'x', 'y'};
    return {Complex(0, 1), third[idx(a)]};
  }
  static constexpr char third[3] = {'z', 'x', 'y'};
  return {Complex(0, -1), third[idx(b)]};
}

/// Product of two Pauli strings. The accumulated +-1, +-i phase is folded
/// into the result coefficient together with the input coefficients.
inline PauliString pauli_product(const PauliString& a, const PauliString& b) {
  if (a.n_qubits() != b.n_qubits())
    throw ConfigError("pauli_product: qubit count mismatch");
  PauliString out(a.n_qubits());
  Complex phase = 1.0;
  for (int q = 1; q <= a.n_qubits(); ++q) {
    auto [ph, c] = pauli_mul(a.label(q), b.label(q));
    phase *= ph;
    out.labels[static_cast<size_t>(q - 1)] = c;
  }
  out.coefficient = a.coefficient * b.coefficient * phase;
  return out;
}

inline bool pauli_commute(const PauliString& a, const PauliString& b) {
  if (a.n_qubits() != b.n_qubits())
    throw ConfigError("pauli_commute: qubit count mismatch");
  int anticommuting = 0;
  for (int q = 1; q <= a.n_qubits(); ++q) {
    char ca = a.label(q), cb = b.label(q);
    if (ca != 'i' && cb != 'i' && ca != cb) ++anticommuting;
  }
  return anticommuting % 2 == 0;
}

/// Convenience: dense operator for a product of Pauli factors, e.g.
/// pauli_term(4, {{1, Axis::X}, {2, Axis::X}}) for x1 x2 on four qubits.
inline Matrix pauli_term(int n_qubits,
                         std::initializer_list<std::pair<int, Axis>> factors) {
  return pauli_to_matrix(PauliString(n_qubits, factors));
}

}  // namespace pairsim
