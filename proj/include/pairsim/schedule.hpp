// Copyright (c) 2026 The pairsim developers
// SPDX-License-Identifier: MIT

#pragma once

#include <algorithm>
#include <cstdio>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "pairsim/models.hpp"
#include "pairsim/pauli.hpp"
#include "pairsim/types.hpp"

namespace pairsim {

// ---------------------------------------------------------------------------
// The compiler's target language. A schedule is an ordered instruction list;
// the first-listed instruction acts first, so the realized unitary is the
// reverse-order matrix product. Chain qubits are numbered 1..N. Schedules
// with allows_cnot carry one extra ancilla, index 0, as the MOST significant
// tensor factor (total dimension 2^(N+1)).
// ---------------------------------------------------------------------------

struct RotationLayer {
  Axis axis = Axis::X;
  double angle = 0.0;          // e^{+i angle sigma^axis} on each listed qubit
  std::vector<int> qubits;
};

struct FreeEvolution {
  double duration = 0.0;       // e^{-i duration H_hw(overrides)}
  EvolutionOverrides overrides;
};

struct CnotGate {
  int control = 0;
  int target = 1;              // flips target when control reads |1> = |down>
};

using Instruction = std::variant<RotationLayer, FreeEvolution, CnotGate>;

struct GateCount {
  long single_qubit_gates = 0;
  long free_evolutions = 0;
  long cnots = 0;

  GateCount& operator+=(const GateCount& o) {
    single_qubit_gates += o.single_qubit_gates;
    free_evolutions += o.free_evolutions;
    cnots += o.cnots;
    return *this;
  }
  long total() const { return single_qubit_gates + free_evolutions + cnots; }
};

class GateSchedule {
 public:
  GateSchedule() = default;
  GateSchedule(int n_qubits, std::string hardware_name, bool allows_cnot = false)
      : n_qubits_(n_qubits), allows_cnot_(allows_cnot),
        hardware_(std::move(hardware_name)) {
    if (n_qubits < 1) throw ConfigError("schedule: need at least one qubit");
    if (n_qubits > 14) throw ConfigError("schedule: more than 14 qubits unsupported");
  }

  int n_qubits() const { return n_qubits_; }
  bool allows_cnot() const { return allows_cnot_; }
  const std::string& hardware() const { return hardware_; }
  const std::vector<Instruction>& items() const { return items_; }
  bool empty() const { return items_.empty(); }
  size_t size() const { return items_.size(); }

  /// Total Hilbert-space dimension including the ancilla when present.
  Eigen::Index dim() const {
    return Eigen::Index(1) << (n_qubits_ + (allows_cnot_ ? 1 : 0));
  }

  /// Appends a rotation layer; empty layers are dropped. Angle convention:
  /// each listed qubit gets e^{+i angle sigma^axis}.
  void add_rotation(Axis axis, double angle, std::vector<int> qubits) {
    if (qubits.empty()) return;
    std::sort(qubits.begin(), qubits.end());
    if (std::adjacent_find(qubits.begin(), qubits.end()) != qubits.end())
      throw ConfigError("schedule: duplicate qubit in rotation layer");
    for (int q : qubits)
      if (q < 1 || q > n_qubits_)
        throw ConfigError("schedule: rotation qubit index out of range");
    items_.push_back(RotationLayer{axis, angle, std::move(qubits)});
  }

  void add_evolution(double duration, EvolutionOverrides overrides = {}) {
    if (duration < 0.0) throw ConfigError("schedule: negative evolution duration");
    if (overrides.omega && static_cast<int>(overrides.omega->size()) != n_qubits_)
      throw ConfigError("schedule: frequency override size must be N");
    if (overrides.j_on) resolve_bond_mask(overrides, n_qubits_ - 1);  // size check
    items_.push_back(FreeEvolution{duration, std::move(overrides)});
  }

  void add_cnot(int control, int target) {
    if (!allows_cnot_) throw ConfigError("schedule: CNOT not allowed here");
    auto in_range = [&](int q) { return q >= 0 && q <= n_qubits_; };
    if (!in_range(control) || !in_range(target) || control == target)
      throw ConfigError("schedule: bad CNOT qubit indices");
    items_.push_back(CnotGate{control, target});
  }

  /// Appends every instruction of `other` (same qubit count required).
  void append(const GateSchedule& other) {
    if (other.n_qubits_ != n_qubits_)
      throw ConfigError("schedule: cannot append schedule of different width");
    if (other.allows_cnot_ && !allows_cnot_)
      throw ConfigError("schedule: cannot append CNOT schedule here");
    items_.insert(items_.end(), other.items_.begin(), other.items_.end());
  }

 private:
  int n_qubits_ = 1;
  bool allows_cnot_ = false;
  std::string hardware_;
  std::vector<Instruction> items_;
};

inline GateCount count_gates(const GateSchedule& s) {
  GateCount c;
  for (const auto& ins : s.items()) {
    if (const auto* rot = std::get_if<RotationLayer>(&ins))
      c.single_qubit_gates += static_cast<long>(rot->qubits.size());
    else if (std::holds_alternative<FreeEvolution>(ins))
      c.free_evolutions += 1;
    else
      c.cnots += 1;
  }
  return c;
}

/// Optional peephole pass: fuses adjacent rotation layers with equal axis and
/// qubit set into one layer (angles add; zero-angle results drop out). Not
/// applied by the compiler; counts elsewhere always reflect literal emission.
inline GateSchedule merge_adjacent_rotations(const GateSchedule& s) {
  std::vector<Instruction> fused;
  for (const auto& ins : s.items()) {
    const auto* rot = std::get_if<RotationLayer>(&ins);
    if (rot && !fused.empty()) {
      if (auto* prev = std::get_if<RotationLayer>(&fused.back());
          prev && prev->axis == rot->axis && prev->qubits == rot->qubits) {
        prev->angle += rot->angle;
        if (prev->angle == 0.0) fused.pop_back();
        continue;
      }
    }
    fused.push_back(ins);
  }
  GateSchedule out(s.n_qubits(), s.hardware(), s.allows_cnot());
  for (const auto& ins : fused) {
    if (const auto* r = std::get_if<RotationLayer>(&ins))
      out.add_rotation(r->axis, r->angle, r->qubits);
    else if (const auto* ev = std::get_if<FreeEvolution>(&ins))
      out.add_evolution(ev->duration, ev->overrides);
    else
      out.add_cnot(std::get<CnotGate>(ins).control, std::get<CnotGate>(ins).target);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Instruction semantics. The dense unitary of a single instruction, including
// the ancilla slot when the schedule carries one. Used directly by tests and
// by the (caching) simulator.
// ---------------------------------------------------------------------------

namespace detail {

/// Tensor position of a qubit index within the schedule's register:
/// with an ancilla, index 0 is slot 0 and chain qubit q is slot q;
/// without, chain qubit q is slot q-1.
inline int tensor_slot(int qubit, bool has_ancilla) {
  return has_ancilla ? qubit : qubit - 1;
}

inline Matrix embed_one(int n_slots, int slot, const Eigen::Matrix2cd& m) {
  Matrix out = Matrix::Identity(1, 1);
  for (int s = 0; s < n_slots; ++s)
    out = kron(out, s == slot ? Matrix(m) : Matrix(Eigen::Matrix2cd::Identity()));
  return out;
}

}  // namespace detail

inline Matrix rotation_layer_unitary(const RotationLayer& rot, int n_qubits,
                                     bool has_ancilla) {
  const int n_slots = n_qubits + (has_ancilla ? 1 : 0);
  // e^{+i theta sigma} = cos(theta) I + i sin(theta) sigma
  Eigen::Matrix2cd g = std::cos(rot.angle) * Eigen::Matrix2cd::Identity() +
                       Complex(0, 1) * std::sin(rot.angle) * pauli_matrix(rot.axis);
  Matrix out = Matrix::Identity(1, 1);
  std::set<int> slots;
  for (int q : rot.qubits) slots.insert(detail::tensor_slot(q, has_ancilla));
  for (int s = 0; s < n_slots; ++s)
    out = kron(out, slots.count(s) ? Matrix(g) : Matrix(Eigen::Matrix2cd::Identity()));
  return out;
}

inline Matrix cnot_unitary(const CnotGate& cx, int n_qubits, bool has_ancilla) {
  const int n_slots = n_qubits + (has_ancilla ? 1 : 0);
  const int cs = detail::tensor_slot(cx.control, has_ancilla);
  const int ts = detail::tensor_slot(cx.target, has_ancilla);
  Eigen::Matrix2cd p0 = Eigen::Matrix2cd::Zero(), p1 = Eigen::Matrix2cd::Zero();
  p0(0, 0) = 1.0;  // control reads |up> = bit 0: target untouched
  p1(1, 1) = 1.0;  // control reads |down> = bit 1: target flipped
  return detail::embed_one(n_slots, cs, p0) +
         detail::embed_one(n_slots, cs, p1) *
             detail::embed_one(n_slots, ts, pauli_matrix(Axis::X));
}

/// Dense unitary of one instruction under the given hardware. Free evolutions
/// act on the chain qubits only; the ancilla (if any) idles through them.
inline Matrix instruction_unitary(const Instruction& ins, const HardwareModel& h,
                                  const GateSchedule& context) {
  if (h.n() != context.n_qubits())
    throw ConfigError("semantics: hardware size does not match schedule");
  if (const auto* rot = std::get_if<RotationLayer>(&ins))
    return rotation_layer_unitary(*rot, context.n_qubits(), context.allows_cnot());
  if (const auto* cx = std::get_if<CnotGate>(&ins))
    return cnot_unitary(*cx, context.n_qubits(), context.allows_cnot());
  const auto& ev = std::get<FreeEvolution>(ins);
  Matrix u = hermitian_expm(hardware_hamiltonian(h, ev.overrides), ev.duration);
  if (context.allows_cnot()) u = kron(Matrix::Identity(2, 2), u);
  return u;
}

// ---------------------------------------------------------------------------
// Text round-trip. One instruction per line; numbers carry 17 significant
// digits so the round-trip is bit-exact.
// ---------------------------------------------------------------------------

namespace detail {

inline std::string fmt_g17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

template <typename T, typename F>
std::string join_csv(const std::vector<T>& xs, F fmt) {
  std::string out;
  for (size_t k = 0; k < xs.size(); ++k) {
    if (k) out += ',';
    out += fmt(xs[k]);
  }
  return out;
}

}  // namespace detail

inline void write_schedule(std::ostream& os, const GateSchedule& s) {
  os << "SCHEDULE version=1 nqubits=" << s.n_qubits()
     << " allows_cnot=" << (s.allows_cnot() ? 1 : 0)
     << " hardware=" << (s.hardware().empty() ? "none" : s.hardware()) << "\n";
  for (const auto& ins : s.items()) {
    if (const auto* rot = std::get_if<RotationLayer>(&ins)) {
      os << "ROT " << axis_char(rot->axis) << ' ' << detail::fmt_g17(rot->angle)
         << " qubits="
         << detail::join_csv(rot->qubits, [](int q) { return std::to_string(q); })
         << "\n";
    } else if (const auto* ev = std::get_if<FreeEvolution>(&ins)) {
      os << "EVOLVE " << detail::fmt_g17(ev->duration);
      if (ev->overrides.omega)
        os << " omega_override="
           << detail::join_csv(*ev->overrides.omega, detail::fmt_g17);
      if (ev->overrides.j_on) {
        std::vector<int> bits(ev->overrides.j_on->begin(), ev->overrides.j_on->end());
        os << " j_on="
           << detail::join_csv(bits, [](int b) { return std::to_string(b); });
      }
      os << "\n";
    } else {
      const auto& cx = std::get<CnotGate>(ins);
      os << "CNOT " << cx.control << ' ' << cx.target << "\n";
    }
  }
}

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

inline double parse_double(const std::string& s, const std::string& what) {
  try {
    size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("schedule parse: bad " + what + " '" + s + "'");
  }
}

inline long parse_long(const std::string& s, const std::string& what) {
  try {
    size_t pos = 0;
    long v = std::stol(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("schedule parse: bad " + what + " '" + s + "'");
  }
}

}  // namespace detail

/// Strict parser for the dump format above. Unknown directives or malformed
/// fields raise ConfigError.
inline GateSchedule read_schedule(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw ConfigError("schedule parse: empty input");
  std::istringstream head(line);
  std::string tag, kv;
  head >> tag;
  if (tag != "SCHEDULE") throw ConfigError("schedule parse: missing SCHEDULE header");
  int nqubits = -1, allows = 0, version = -1;
  std::string hardware = "none";
  while (head >> kv) {
    auto eq = kv.find('=');
    if (eq == std::string::npos)
      throw ConfigError("schedule parse: malformed header field '" + kv + "'");
    std::string key = kv.substr(0, eq), val = kv.substr(eq + 1);
    if (key == "version") version = static_cast<int>(detail::parse_long(val, "version"));
    else if (key == "nqubits") nqubits = static_cast<int>(detail::parse_long(val, "nqubits"));
    else if (key == "allows_cnot") allows = static_cast<int>(detail::parse_long(val, "allows_cnot"));
    else if (key == "hardware") hardware = val;
    else throw ConfigError("schedule parse: unknown header field '" + key + "'");
  }
  if (version != 1) throw ConfigError("schedule parse: unsupported version");
  if (nqubits < 1) throw ConfigError("schedule parse: bad nqubits");
  GateSchedule s(nqubits, hardware == "none" ? "" : hardware, allows != 0);

  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string op;
    ls >> op;
    if (op == "ROT") {
      std::string axis_s, angle_s, qubits_kv;
      if (!(ls >> axis_s >> angle_s >> qubits_kv) || axis_s.size() != 1)
        throw ConfigError("schedule parse: malformed ROT line '" + line + "'");
      if (qubits_kv.rfind("qubits=", 0) != 0)
        throw ConfigError("schedule parse: ROT missing qubits= field");
      std::vector<int> qubits;
      for (const auto& tok : detail::split(qubits_kv.substr(7), ','))
        qubits.push_back(static_cast<int>(detail::parse_long(tok, "qubit index")));
      s.add_rotation(axis_from_char(axis_s[0]),
                     detail::parse_double(angle_s, "angle"), std::move(qubits));
    } else if (op == "EVOLVE") {
      std::string dur_s;
      if (!(ls >> dur_s))
        throw ConfigError("schedule parse: malformed EVOLVE line '" + line + "'");
      EvolutionOverrides ov;
      std::string field;
      while (ls >> field) {
        if (field.rfind("omega_override=", 0) == 0) {
          std::vector<double> w;
          for (const auto& tok : detail::split(field.substr(15), ','))
            w.push_back(detail::parse_double(tok, "frequency"));
          ov.omega = std::move(w);
        } else if (field.rfind("j_on=", 0) == 0) {
          std::vector<bool> mask;
          for (const auto& tok : detail::split(field.substr(5), ',')) {
            long b = detail::parse_long(tok, "bond flag");
            if (b != 0 && b != 1) throw ConfigError("schedule parse: bond flag not 0/1");
            mask.push_back(b == 1);
          }
          ov.j_on = std::move(mask);
        } else {
          throw ConfigError("schedule parse: unknown EVOLVE field '" + field + "'");
        }
      }
      s.add_evolution(detail::parse_double(dur_s, "duration"), std::move(ov));
    } else if (op == "CNOT") {
      std::string c_s, t_s;
      if (!(ls >> c_s >> t_s))
        throw ConfigError("schedule parse: malformed CNOT line '" + line + "'");
      s.add_cnot(static_cast<int>(detail::parse_long(c_s, "control")),
                 static_cast<int>(detail::parse_long(t_s, "target")));
    } else {
      throw ConfigError("schedule parse: unknown instruction '" + op + "'");
    }
  }
  return s;
}

inline std::string schedule_to_string(const GateSchedule& s) {
  std::ostringstream os;
  write_schedule(os, s);
  return os.str();
}

inline GateSchedule schedule_from_string(const std::string& text) {
  std::istringstream is(text);
  return read_schedule(is);
}

}  // namespace pairsim
