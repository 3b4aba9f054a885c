// Copyright (c) 2026 The pairsim developers
// SPDX-License-Identifier: MIT

#pragma once

#include <cmath>
#include <sstream>
#include <string>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "pairsim/types.hpp"

namespace pairsim {

inline double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

inline bool is_hermitian(const Matrix& h, double tol = 1e-12) {
  if (h.rows() != h.cols()) return false;
  return max_abs(h - h.adjoint()) <= tol * std::max(1.0, max_abs(h));
}

inline bool is_unitary(const Matrix& u, double tol = 1e-10) {
  if (u.rows() != u.cols()) return false;
  Matrix g = u.adjoint() * u;
  g.diagonal().array() -= 1.0;
  return max_abs(g) <= tol;
}

/// Eigendecomposition of a Hermitian matrix, kept around so that repeated
/// exponentials of the same generator cost two matrix products each.
struct Eigensystem {
  RealVector values;
  Matrix vectors;

  /// e^{-i t H} reconstructed from the stored decomposition.
  Matrix propagator(double t) const {
    Vector phases(values.size());
    for (Eigen::Index k = 0; k < values.size(); ++k)
      phases[k] = std::polar(1.0, -t * values[k]);
    return vectors * phases.asDiagonal() * vectors.adjoint();
  }

  /// e^{-i t H} |psi>, two matrix-vector products.
  Vector apply_propagator(double t, const Vector& psi) const {
    Vector amps = vectors.adjoint() * psi;
    for (Eigen::Index k = 0; k < values.size(); ++k)
      amps[k] *= std::polar(1.0, -t * values[k]);
    return vectors * amps;
  }
};

inline Eigensystem hermitian_eigendecompose(const Matrix& h, double herm_tol = 1e-9) {
  if (h.rows() != h.cols()) throw NumericError("eigendecompose: matrix not square");
  const double scale = std::max(1.0, max_abs(h));
  if (max_abs(h - h.adjoint()) > herm_tol * scale)
    throw NumericError("eigendecompose: matrix not Hermitian within tolerance");
  Eigen::SelfAdjointEigenSolver<Matrix> solver((h + h.adjoint()) / 2.0);
  if (solver.info() != Eigen::Success)
    throw NumericError("eigendecompose: eigensolver failed to converge");
  return Eigensystem{solver.eigenvalues(), solver.eigenvectors()};
}

/// e^{-i t H} for Hermitian H.
inline Matrix hermitian_expm(const Matrix& h, double t = 1.0) {
  return hermitian_eigendecompose(h).propagator(t);
}

/// Principal matrix logarithm of a unitary via its Schur form. Unitaries are
/// normal, so the Schur triangle is diagonal up to rounding; the off-diagonal
/// residue is checked. Branch cuts at eigenphase +-pi are the caller's
/// responsibility.
inline Matrix principal_log_unitary(const Matrix& u, double tol = 1e-8) {
  if (u.rows() != u.cols()) throw NumericError("log: matrix not square");
  if (!is_unitary(u, 1e-8)) throw NumericError("log: matrix not unitary");
  Eigen::ComplexSchur<Matrix> schur(u);
  if (schur.info() != Eigen::Success) throw NumericError("log: Schur decomposition failed");
  const Matrix& t = schur.matrixT();
  Matrix strict = t.triangularView<Eigen::StrictlyUpper>();
  if (max_abs(strict) > tol)
    throw NumericError("log: Schur form not diagonal; input not normal enough");
  Vector logs(t.rows());
  for (Eigen::Index k = 0; k < t.rows(); ++k) logs[k] = std::log(t(k, k));
  return schur.matrixU() * logs.asDiagonal() * schur.matrixU().adjoint();
}

/// max-entry distance between u and v after aligning the global phase by
/// phi* = arg Tr(u^dag v). Exactly phase-invariant, and unlike sqrt(2(1-F))
/// it keeps full double precision near zero.
inline double phase_aligned_distance(const Matrix& u, const Matrix& v) {
  if (u.rows() != v.rows() || u.cols() != v.cols())
    throw NumericError("distance: dimension mismatch");
  Complex tr = (u.adjoint() * v).trace();
  Complex phase = std::abs(tr) > 0 ? std::conj(tr) / std::abs(tr) : Complex(1.0, 0.0);
  return max_abs(u - phase * v);
}

}  // namespace pairsim
