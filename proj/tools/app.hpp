#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include "kvol/kvol_engine.hpp"

namespace kvol::cli {

enum class Format { csv, json, text };

struct RunConfig {
  std::string subcommand;
  std::optional<std::pair<int, int>> lshape;
  std::optional<std::string> origami_path;
  std::optional<std::int64_t> max_sq_len;
  std::optional<std::string> out;
  std::optional<Format> format;
  int workers = 1;
  int n_from = 2;
  int n_to = 8;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::optional<std::pair<std::string, std::string>> pair;
  bool stability = false;
};

/// Input that cannot be run (bad parameters, unreadable file); maps to exit code 2.
class UsageError : public Error {
 public:
  using Error::Error;
};

struct RunResult {
  std::string output;       // report, written to --out or stdout
  std::string diagnostics;  // warnings and progress, written to stderr
  int exit_code = 0;
};

Origami load_surface(const RunConfig& cfg);

RunResult run_info(const RunConfig& cfg);
RunResult run_enumerate(const RunConfig& cfg);
RunResult run_kvol(const RunConfig& cfg);
RunResult run_lemmas(const RunConfig& cfg);
RunResult run_certify(const RunConfig& cfg);
RunResult run_sweep(const RunConfig& cfg);
RunResult run_sommes(const RunConfig& cfg);

/// Dispatch on cfg.subcommand.
RunResult run(const RunConfig& cfg);

/// 12 significant digits.
std::string decimal(long double v);

/// Worker count from KVOL_WORKERS when set, otherwise `fallback`.
int workers_from_env(int fallback);

}  // namespace kvol::cli
