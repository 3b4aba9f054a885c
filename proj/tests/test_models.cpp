// Copyright (c) 2026 The pairsim developers
// SPDX-License-Identifier: MIT

#include <catch2/catch_amalgamated.hpp>

#include "pairsim/linalg.hpp"
#include "pairsim/models.hpp"
#include "pairsim/pauli.hpp"

using namespace pairsim;

namespace {

PairingModel sample_pairing() {
  RealVector eps(3);
  eps << 2.0, 1.0, -0.5;
  RealMatrix v = RealMatrix::Zero(3, 3);
  v(0, 1) = v(1, 0) = -0.2;
  v(0, 2) = v(2, 0) = 0.1;
  v(1, 2) = v(2, 1) = 0.05;
  return make_pairing_model(eps, v);
}

}  // namespace

TEST_CASE("pairing hamiltonian is hermitian and matches terms", "[models]") {
  const PairingModel p = sample_pairing();
  const Matrix h = pairing_hamiltonian(p);
  REQUIRE(is_hermitian(h, 1e-12));

  Matrix expect = Matrix::Zero(8, 8);
  for (int m = 1; m <= 3; ++m)
    expect += 0.5 * p.epsilon[m - 1] * pauli_term(3, {{m, Axis::Z}});
  for (int m = 1; m <= 2; ++m)
    for (int l = m + 1; l <= 3; ++l) {
      const Matrix xx = pauli_term(3, {{m, Axis::X}, {l, Axis::X}});
      const Matrix yy = pauli_term(3, {{m, Axis::Y}, {l, Axis::Y}});
      expect += 0.5 * p.v(m - 1, l - 1) * (xx + yy);
    }
  CHECK(max_abs(Matrix(h - expect)) < 1e-13);
}

TEST_CASE("pairing hamiltonian conserves total z", "[models]") {
  const PairingModel p = sample_pairing();
  const Matrix h = pairing_hamiltonian(p);
  Matrix zsum = Matrix::Zero(8, 8);
  for (int m = 1; m <= 3; ++m) zsum += pauli_term(3, {{m, Axis::Z}});
  CHECK(max_abs(Matrix(h * zsum - zsum * h)) < 1e-12);
}

TEST_CASE("asymmetric coupling matrix is rejected", "[models]") {
  RealVector eps(2);
  eps << 1.0, 2.0;
  RealMatrix v = RealMatrix::Zero(2, 2);
  v(0, 1) = 0.3;
  v(1, 0) = 0.1;
  CHECK_THROWS_AS(make_pairing_model(eps, v), ConfigError);
}

TEST_CASE("fermionic ingestion folds self-coupling into the splitting", "[models]") {
  FermionicInput f;
  f.eps = RealVector(2);
  f.eps << 4.0, 6.0;
  f.v = RealMatrix::Zero(2, 2);
  f.v(0, 0) = 0.5;
  f.v(1, 1) = -0.25;
  f.v(0, 1) = f.v(1, 0) = -0.4;
  const PairingModel p = from_fermionic(f);
  CHECK(p.epsilon[0] == Catch::Approx(4.5));
  CHECK(p.epsilon[1] == Catch::Approx(5.75));
  CHECK(p.v(0, 0) == 0.0);
  CHECK(p.v(1, 1) == 0.0);
  CHECK(p.v(0, 1) == Catch::Approx(-0.4));
}

TEST_CASE("hardware hamiltonian axis couplings per kind", "[models]") {
  const int n = 3;
  const RealVector omega = RealVector::Constant(n, 5.0);
  const RealVector j = RealVector::Constant(n - 1, 0.25);

  struct Case {
    HardwareKind kind;
    double cx, cy, cz;
  };
  const std::vector<Case> cases = {
      {HardwareKind::IsingLongitudinal, 0, 0, 1},
      {HardwareKind::IsingTransverse, 1, 0, 0},
      {HardwareKind::XY, 1, 1, 0},
      {HardwareKind::Heisenberg, 1, 1, 1},
  };
  for (const auto& c : cases) {
    const HardwareModel h = make_hardware_model(c.kind, omega, j, false, false);
    const Matrix built = hardware_hamiltonian(h);
    Matrix expect = Matrix::Zero(8, 8);
    for (int q = 1; q <= n; ++q)
      expect += 0.5 * omega[q - 1] * pauli_term(n, {{q, Axis::Z}});
    for (int l = 1; l <= n - 1; ++l) {
      expect += c.cx * j[l - 1] *
                pauli_term(n, {{l, Axis::X}, {l + 1, Axis::X}});
      expect += c.cy * j[l - 1] *
                pauli_term(n, {{l, Axis::Y}, {l + 1, Axis::Y}});
      expect += c.cz * j[l - 1] *
                pauli_term(n, {{l, Axis::Z}, {l + 1, Axis::Z}});
    }
    INFO(to_string(c.kind));
    CHECK(max_abs(Matrix(built - expect)) < 1e-13);
  }
}

TEST_CASE("xy and longitudinal hardware conserve total z, transverse does not", "[models]") {
  const int n = 3;
  const RealVector omega = RealVector::Constant(n, 5.0);
  const RealVector j = RealVector::Constant(n - 1, 0.25);
  Matrix zsum = Matrix::Zero(8, 8);
  for (int q = 1; q <= n; ++q) zsum += pauli_term(n, {{q, Axis::Z}});

  auto comm_norm = [&](HardwareKind k) {
    const Matrix h = hardware_hamiltonian(make_hardware_model(k, omega, j, false, false));
    return max_abs(Matrix(h * zsum - zsum * h));
  };
  CHECK(comm_norm(HardwareKind::IsingLongitudinal) < 1e-12);
  CHECK(comm_norm(HardwareKind::XY) < 1e-12);
  CHECK(comm_norm(HardwareKind::Heisenberg) < 1e-12);
  CHECK(comm_norm(HardwareKind::IsingTransverse) > 0.1);
}

TEST_CASE("override rules enforce tunability flags", "[models]") {
  const RealVector omega = RealVector::Constant(2, 5.0);
  const RealVector j = RealVector::Constant(1, 0.25);
  const HardwareModel fixed = make_hardware_model(HardwareKind::XY, omega, j, false, false);
  const HardwareModel tunable = make_hardware_model(HardwareKind::XY, omega, j, true, true);

  EvolutionOverrides freq;
  freq.omega = std::vector<double>{5.0, -5.0};
  CHECK_THROWS_AS(hardware_hamiltonian(fixed, freq), ConstraintError);
  CHECK_NOTHROW(hardware_hamiltonian(tunable, freq));

  EvolutionOverrides off;
  off.j_on = std::vector<bool>{false};
  CHECK_THROWS_AS(hardware_hamiltonian(fixed, off), ConstraintError);
  CHECK_NOTHROW(hardware_hamiltonian(tunable, off));

  // identical-to-base omega override is allowed even without the flag
  EvolutionOverrides same;
  same.omega = std::vector<double>{5.0, 5.0};
  CHECK_NOTHROW(hardware_hamiltonian(fixed, same));
}

TEST_CASE("bond mask broadcast", "[models]") {
  const RealVector omega = RealVector::Constant(4, 5.0);
  const RealVector j = RealVector::Constant(3, 0.25);
  const HardwareModel h = make_hardware_model(HardwareKind::XY, omega, j, true, true);
  EvolutionOverrides scalar_off;
  scalar_off.j_on = std::vector<bool>{false};
  const Matrix off = hardware_hamiltonian(h, scalar_off);
  Matrix expect = Matrix::Zero(16, 16);
  for (int q = 1; q <= 4; ++q)
    expect += 0.5 * 5.0 * pauli_term(4, {{q, Axis::Z}});
  CHECK(max_abs(Matrix(off - expect)) < 1e-13);
}

TEST_CASE("validation rejects bad hardware parameters", "[models]") {
  const RealVector omega_bad = RealVector::Constant(2, -1.0);
  const RealVector j = RealVector::Constant(1, 0.25);
  CHECK_THROWS_AS(make_hardware_model(HardwareKind::XY, omega_bad, j, false, false),
                  ConfigError);
  const RealVector omega = RealVector::Constant(2, 5.0);
  const RealVector j_wrong = RealVector::Constant(2, 0.25);
  CHECK_THROWS_AS(make_hardware_model(HardwareKind::XY, omega, j_wrong, false, false),
                  ConfigError);
}

TEST_CASE("trotter options validate", "[models]") {
  TrotterOptions opts;
  opts.m_intervals = 0;
  CHECK_THROWS_AS(validate(opts), ConfigError);
  opts.m_intervals = 2;
  opts.g_subintervals = -1;
  CHECK_THROWS_AS(validate(opts), ConfigError);
  opts.g_subintervals = 3;
  CHECK_NOTHROW(validate(opts));
}
