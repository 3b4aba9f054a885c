// Copyright (c) 2026 The pairsim developers
// SPDX-License-Identifier: MIT

#pragma once

#include <cstdint>
#include <fstream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "pairsim/analysis.hpp"
#include "pairsim/models.hpp"
#include "pairsim/types.hpp"

namespace pairsim {

// ---------------------------------------------------------------------------
// JSON run configuration. Parsing is fail-closed: unknown keys anywhere in
// the document are rejected, wrong types raise ConfigError with the key path.
// ---------------------------------------------------------------------------

namespace detail {

using nlohmann::json;

inline void check_keys(const json& j, const std::string& ctx,
                       const std::set<std::string>& allowed) {
  if (!j.is_object()) throw ConfigError(ctx + ": expected an object");
  for (const auto& item : j.items())
    if (!allowed.count(item.key()))
      throw ConfigError(ctx + ": unknown key '" + item.key() + "'");
}

inline double get_double(const json& j, const std::string& ctx, const std::string& key) {
  if (!j.contains(key)) throw ConfigError(ctx + ": missing key '" + key + "'");
  if (!j.at(key).is_number()) throw ConfigError(ctx + "." + key + ": expected a number");
  return j.at(key).get<double>();
}

inline double get_double_or(const json& j, const std::string& ctx, const std::string& key,
                            double fallback) {
  return j.contains(key) ? get_double(j, ctx, key) : fallback;
}

inline long get_int(const json& j, const std::string& ctx, const std::string& key) {
  if (!j.contains(key)) throw ConfigError(ctx + ": missing key '" + key + "'");
  if (!j.at(key).is_number_integer())
    throw ConfigError(ctx + "." + key + ": expected an integer");
  return j.at(key).get<long>();
}

inline long get_int_or(const json& j, const std::string& ctx, const std::string& key,
                       long fallback) {
  return j.contains(key) ? get_int(j, ctx, key) : fallback;
}

inline bool get_bool_or(const json& j, const std::string& ctx, const std::string& key,
                        bool fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_boolean()) throw ConfigError(ctx + "." + key + ": expected a boolean");
  return j.at(key).get<bool>();
}

inline std::string get_string(const json& j, const std::string& ctx, const std::string& key) {
  if (!j.contains(key)) throw ConfigError(ctx + ": missing key '" + key + "'");
  if (!j.at(key).is_string()) throw ConfigError(ctx + "." + key + ": expected a string");
  return j.at(key).get<std::string>();
}

inline RealVector get_real_vector(const json& v, const std::string& ctx) {
  if (!v.is_array()) throw ConfigError(ctx + ": expected an array of numbers");
  RealVector out(v.size());
  Eigen::Index i = 0;
  for (const auto& x : v) {
    if (!x.is_number()) throw ConfigError(ctx + ": expected an array of numbers");
    out[i++] = x.get<double>();
  }
  return out;
}

inline RealMatrix get_real_matrix(const json& v, const std::string& ctx) {
  if (!v.is_array() || v.empty()) throw ConfigError(ctx + ": expected an array of rows");
  const size_t rows = v.size();
  RealMatrix out(rows, rows);
  size_t r = 0;
  for (const auto& row : v) {
    if (!row.is_array() || row.size() != rows)
      throw ConfigError(ctx + ": expected a square numeric matrix");
    size_t c = 0;
    for (const auto& x : row) {
      if (!x.is_number()) throw ConfigError(ctx + ": expected a square numeric matrix");
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c++)) = x.get<double>();
    }
    ++r;
  }
  return out;
}

/// Accepts either a scalar (broadcast to `size`) or an array of length `size`.
inline RealVector get_broadcast(const json& j, const std::string& ctx, const std::string& key,
                                Eigen::Index size) {
  if (!j.contains(key)) throw ConfigError(ctx + ": missing key '" + key + "'");
  const auto& v = j.at(key);
  if (v.is_number()) return RealVector::Constant(size, v.get<double>());
  const RealVector out = get_real_vector(v, ctx + "." + key);
  if (out.size() != size)
    throw ConfigError(ctx + "." + key + ": expected " + std::to_string(size) + " entries, got " +
                      std::to_string(out.size()));
  return out;
}

}  // namespace detail

struct CompileSection {
  double t = 1.0;
};

struct SimulateSection {
  double t = 1.0;
  FidelityMetric metric = FidelityMetric::Operator;
};

struct SweepSection {
  double t_min = 0.0;
  double t_max = 1.0;
  int points = 32;
  FidelityMetric metric = FidelityMetric::Operator;
};

struct TrotterFitSection {
  double t = 1.0;
  std::vector<int> m_list;
};

struct ComplexitySection {
  std::vector<int> n_list;
  std::vector<HardwareKind> backends;
  std::vector<int> g_list = {1};
  double t = 0.1;
};

struct SpectroscopySection {
  double t_max = 100.0;
  int samples = 256;
  std::string initial_state;
  bool compiled = false;
  std::uint64_t shots = 0;
  double threshold = 0.05;
};

struct RunConfig {
  std::optional<PairingModel> target;
  std::optional<HardwareModel> hardware;
  TrotterOptions trotter;
  std::optional<CompileSection> compile;
  std::optional<SimulateSection> simulate;
  std::optional<SweepSection> sweep;
  std::optional<TrotterFitSection> trotter_fit;
  std::optional<ComplexitySection> complexity;
  std::optional<SpectroscopySection> spectroscopy;
  nlohmann::json raw;

  const PairingModel& require_target() const {
    if (!target) throw ConfigError("config: missing 'target' section");
    return *target;
  }
  const HardwareModel& require_hardware() const {
    if (!hardware) throw ConfigError("config: missing 'hardware' section");
    return *hardware;
  }
};

inline RunConfig parse_config(const nlohmann::json& doc) {
  using detail::json;
  detail::check_keys(doc, "config",
                     {"target", "hardware", "trotter", "compile", "simulate", "sweep",
                      "trotter_fit", "complexity", "spectroscopy"});
  RunConfig cfg;
  cfg.raw = doc;

  if (doc.contains("target")) {
    const json& t = doc.at("target");
    detail::check_keys(t, "target", {"n", "epsilon", "v", "fermionic"});
    if (t.contains("fermionic")) {
      if (t.contains("epsilon") || t.contains("v"))
        throw ConfigError("target: 'fermionic' excludes 'epsilon'/'v'");
      const json& f = t.at("fermionic");
      detail::check_keys(f, "target.fermionic", {"eps", "v"});
      FermionicInput in;
      if (!f.contains("eps")) throw ConfigError("target.fermionic: missing key 'eps'");
      in.eps = detail::get_real_vector(f.at("eps"), "target.fermionic.eps");
      if (!f.contains("v")) throw ConfigError("target.fermionic: missing key 'v'");
      in.v = detail::get_real_matrix(f.at("v"), "target.fermionic.v");
      cfg.target = from_fermionic(in);
    } else {
      if (!t.contains("epsilon")) throw ConfigError("target: missing key 'epsilon'");
      const RealVector eps = detail::get_real_vector(t.at("epsilon"), "target.epsilon");
      RealMatrix v = RealMatrix::Zero(eps.size(), eps.size());
      if (t.contains("v")) v = detail::get_real_matrix(t.at("v"), "target.v");
      if (v.rows() != eps.size())
        throw ConfigError("target.v: size does not match target.epsilon");
      cfg.target = make_pairing_model(eps, v);
    }
    if (t.contains("n") &&
        detail::get_int(t, "target", "n") != cfg.target->n())
      throw ConfigError("target.n: does not match the parameter arrays");
  }

  if (doc.contains("hardware")) {
    const json& h = doc.at("hardware");
    detail::check_keys(h, "hardware",
                       {"kind", "n", "omega", "j", "freq_tunable", "couplings_switchable"});
    const HardwareKind kind = hardware_kind_from_string(detail::get_string(h, "hardware", "kind"));
    long n = detail::get_int_or(h, "hardware", "n", cfg.target ? cfg.target->n() : 0);
    if (n < 1)
      throw ConfigError("hardware: qubit count unknown (set hardware.n or a target)");
    const RealVector omega = detail::get_broadcast(h, "hardware", "omega", n);
    RealVector j = RealVector::Zero(std::max<long>(0, n - 1));
    if (n > 1) j = detail::get_broadcast(h, "hardware", "j", n - 1);
    cfg.hardware = make_hardware_model(kind, omega, j,
                                       detail::get_bool_or(h, "hardware", "freq_tunable", false),
                                       detail::get_bool_or(h, "hardware", "couplings_switchable", false));
  }

  if (doc.contains("trotter")) {
    const json& t = doc.at("trotter");
    detail::check_keys(t, "trotter", {"m", "g", "route"});
    cfg.trotter.m_intervals = static_cast<int>(detail::get_int_or(t, "trotter", "m", 1));
    cfg.trotter.g_subintervals = static_cast<int>(detail::get_int_or(t, "trotter", "g", 1));
    if (t.contains("route")) {
      const std::string r = detail::get_string(t, "trotter", "route");
      if (r == "auto") cfg.trotter.route = TrotterOptions::PairRoute::Auto;
      else if (r == "from_zz") cfg.trotter.route = TrotterOptions::PairRoute::FromZZ;
      else if (r == "chain") cfg.trotter.route = TrotterOptions::PairRoute::Chain;
      else throw ConfigError("trotter.route: expected auto|from_zz|chain");
    }
    validate(cfg.trotter);
  }

  if (doc.contains("compile")) {
    const json& c = doc.at("compile");
    detail::check_keys(c, "compile", {"t"});
    CompileSection sec;
    sec.t = detail::get_double(c, "compile", "t");
    cfg.compile = sec;
  }

  if (doc.contains("simulate")) {
    const json& s = doc.at("simulate");
    detail::check_keys(s, "simulate", {"t", "metric"});
    SimulateSection sec;
    sec.t = detail::get_double(s, "simulate", "t");
    if (s.contains("metric"))
      sec.metric = fidelity_metric_from_string(detail::get_string(s, "simulate", "metric"));
    cfg.simulate = sec;
  }

  if (doc.contains("sweep")) {
    const json& s = doc.at("sweep");
    detail::check_keys(s, "sweep", {"t_min", "t_max", "points", "metric"});
    SweepSection sec;
    sec.t_min = detail::get_double_or(s, "sweep", "t_min", 0.0);
    sec.t_max = detail::get_double(s, "sweep", "t_max");
    sec.points = static_cast<int>(detail::get_int_or(s, "sweep", "points", 32));
    if (sec.points < 2) throw ConfigError("sweep.points: need at least 2");
    if (!(sec.t_max > sec.t_min)) throw ConfigError("sweep: t_max must exceed t_min");
    if (s.contains("metric"))
      sec.metric = fidelity_metric_from_string(detail::get_string(s, "sweep", "metric"));
    cfg.sweep = sec;
  }

  if (doc.contains("trotter_fit")) {
    const json& s = doc.at("trotter_fit");
    detail::check_keys(s, "trotter_fit", {"t", "m_list"});
    TrotterFitSection sec;
    sec.t = detail::get_double(s, "trotter_fit", "t");
    if (!s.contains("m_list") || !s.at("m_list").is_array())
      throw ConfigError("trotter_fit.m_list: expected an integer array");
    for (const auto& m : s.at("m_list")) {
      if (!m.is_number_integer()) throw ConfigError("trotter_fit.m_list: expected integers");
      sec.m_list.push_back(m.get<int>());
    }
    cfg.trotter_fit = sec;
  }

  if (doc.contains("complexity")) {
    const json& s = doc.at("complexity");
    detail::check_keys(s, "complexity", {"n_list", "backends", "g_list", "t"});
    ComplexitySection sec;
    if (!s.contains("n_list") || !s.at("n_list").is_array())
      throw ConfigError("complexity.n_list: expected an integer array");
    for (const auto& n : s.at("n_list")) {
      if (!n.is_number_integer()) throw ConfigError("complexity.n_list: expected integers");
      sec.n_list.push_back(n.get<int>());
    }
    if (s.contains("backends")) {
      for (const auto& b : s.at("backends")) {
        if (!b.is_string()) throw ConfigError("complexity.backends: expected strings");
        sec.backends.push_back(hardware_kind_from_string(b.get<std::string>()));
      }
    } else {
      sec.backends = {HardwareKind::IsingLongitudinal, HardwareKind::IsingTransverse,
                      HardwareKind::XY, HardwareKind::Heisenberg};
    }
    if (s.contains("g_list")) {
      sec.g_list.clear();
      for (const auto& g : s.at("g_list")) {
        if (!g.is_number_integer()) throw ConfigError("complexity.g_list: expected integers");
        sec.g_list.push_back(g.get<int>());
      }
    }
    sec.t = detail::get_double_or(s, "complexity", "t", 0.1);
    cfg.complexity = sec;
  }

  if (doc.contains("spectroscopy")) {
    const json& s = doc.at("spectroscopy");
    detail::check_keys(s, "spectroscopy",
                       {"t_max", "samples", "initial_state", "source", "shots", "threshold"});
    SpectroscopySection sec;
    sec.t_max = detail::get_double(s, "spectroscopy", "t_max");
    sec.samples = static_cast<int>(detail::get_int_or(s, "spectroscopy", "samples", 256));
    sec.initial_state = detail::get_string(s, "spectroscopy", "initial_state");
    if (s.contains("source")) {
      const std::string src = detail::get_string(s, "spectroscopy", "source");
      if (src == "exact") sec.compiled = false;
      else if (src == "compiled") sec.compiled = true;
      else throw ConfigError("spectroscopy.source: expected exact|compiled");
    }
    sec.shots = static_cast<std::uint64_t>(detail::get_int_or(s, "spectroscopy", "shots", 0));
    sec.threshold = detail::get_double_or(s, "spectroscopy", "threshold", 0.05);
    cfg.spectroscopy = sec;
  }

  return cfg;
}

inline RunConfig load_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open config file " + path);
  nlohmann::json doc;
  try {
    is >> doc;
  } catch (const std::exception& e) {
    throw ConfigError("config parse error in " + path + ": " + e.what());
  }
  return parse_config(doc);
}

}  // namespace pairsim
