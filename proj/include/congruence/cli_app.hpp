#pragma once

// Command dispatch behind the `congruence` executable: one JSON document in,
// one JSON document (or CSV for `experiment`) out, plus an exit code.
//
// Exit codes: 0 success, 1 verification failed / nothing found,
// 2 malformed input, 3 rank precondition unmet.

#include <cstdint>
#include <optional>
#include <string>

#include "congruence/error.hpp"

namespace congruence::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitMalformed = 2;
inline constexpr int kExitPrecondition = 3;

struct JobSpec {
  /// rank | normal-form | witness | verify | gen | experiment
  std::string command;
  /// Used when the input document carries no "field".
  std::string field_kind = "tower";
  uint32_t prime = 5;
  /// Required by witness, gen, experiment and normal-form without a basis;
  /// may also be given as "seed" in the document.
  std::optional<uint64_t> seed;
  uint64_t enum_budget = 2'000'000;
  int retries = 16;
  int jobs = 1;
  /// JSON text (may be empty for commands without payload).
  std::string input;
};

struct JobResult {
  int exit_code = kExitOk;
  std::string output;
};

int exit_code_for(ErrorCode code);

JobResult run_job(const JobSpec& job);

}  // namespace congruence::cli
