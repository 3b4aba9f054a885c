// Copyright (c) 2026 The pairsim developers
// SPDX-License-Identifier: MIT

#pragma once

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pairsim/types.hpp"
#include "pairsim/version.hpp"

namespace pairsim {

// ---------------------------------------------------------------------------
// Logging. PAIRSIM_LOG selects quiet|info|debug (default info); messages go
// to stderr so artifact streams stay clean.
// ---------------------------------------------------------------------------

enum class LogLevel { Quiet = 0, Info = 1, Debug = 2 };

inline LogLevel log_level() {
  static const LogLevel level = [] {
    const char* env = std::getenv("PAIRSIM_LOG");
    if (!env) return LogLevel::Info;
    const std::string v(env);
    if (v == "quiet") return LogLevel::Quiet;
    if (v == "debug") return LogLevel::Debug;
    return LogLevel::Info;
  }();
  return level;
}

inline void log_info(const std::string& msg) {
  if (log_level() >= LogLevel::Info) std::cerr << "[pairsim] " << msg << '\n';
}

inline void log_debug(const std::string& msg) {
  if (log_level() >= LogLevel::Debug) std::cerr << "[pairsim:debug] " << msg << '\n';
}

// ---------------------------------------------------------------------------
// Atomic file output: write to a temporary in the target directory, then
// rename over the destination so readers never observe partial files.
// ---------------------------------------------------------------------------

inline void atomic_write(const std::filesystem::path& path, const std::string& content) {
  const auto dir = path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");
  std::filesystem::create_directories(dir);
  const auto tmp = dir / (path.filename().string() + ".tmp");
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw ConfigError("cannot open " + tmp.string() + " for writing");
    os << content;
    if (!os) throw ConfigError("short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

// ---------------------------------------------------------------------------
// Run manifest: one per CLI invocation, listing the artifacts written.
// ---------------------------------------------------------------------------

struct RunManifest {
  std::string subcommand;
  nlohmann::json config_snapshot;
  std::vector<std::string> outputs;
  double wall_seconds = 0.0;
  std::optional<std::uint64_t> seed;

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["tool"] = "pairsim";
    j["version"] = kVersion;
    j["subcommand"] = subcommand;
    j["config"] = config_snapshot;
    j["outputs"] = outputs;
    j["wall_seconds"] = wall_seconds;
    if (seed) j["seed"] = *seed;
    return j;
  }
};

/// Wall-clock stopwatch for manifest durations.
class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace pairsim
