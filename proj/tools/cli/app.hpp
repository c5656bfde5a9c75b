#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cli/json_io.hpp"

namespace prolim::cli {

enum ExitCode : int { kOk = 0, kClaimFailed = 1, kInputError = 2, kWindowInsufficient = 3 };

struct RunConfig {
  std::vector<std::string> command;  // e.g. {"tower", "nabla"}

  std::string matrix;
  std::string group;
  std::string source;
  std::string target;
  std::string tower;
  std::string complex;
  std::optional<std::size_t> window;
  std::optional<std::size_t> dim;
  std::string coeff = "Z";

  // tower factor
  std::optional<std::size_t> stage;
  std::string functional;
  std::string formula;
  std::optional<std::size_t> rounds;

  // demos
  std::string p = "2";
  unsigned precision = 10;
  std::string n;
  std::string b;

  std::string out;
  int verbosity = 1;
};

struct RunResult {
  int exit_code = kOk;
  Json report;
  std::string summary;
};

/// Largest accepted window: PROLIM_WINDOW_MAX, 64 when unset.
std::size_t window_max();

/// Never throws; input errors become exit 2 with {"error": message}.
RunResult run(const RunConfig& config);

/// Stable text for a report: sorted keys, two-space indent, trailing newline.
std::string render(const Json& report);

}  // namespace prolim::cli
