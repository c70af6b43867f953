#pragma once

// Sweep of component ranks between the proven bound 2r and the smaller bound
// s 2^s l + (s+1) n, recording how often the construction still verifies.

#include <string>
#include <vector>

#include "congruence/orbit_witness.hpp"

namespace congruence {

struct ExperimentConfig {
  std::size_t p = 1, q = 0, n = 0, l = 1;
  std::size_t instances = 20;
  /// Ambient size is 2r + extra.
  std::size_t extra = 2;
  uint64_t seed = 0;
  int jobs = 1;
  WitnessOptions options;
};

struct ExperimentRow {
  std::size_t rank = 0;
  std::size_t instances = 0;
  std::size_t successes = 0;
};

/// Rows from rank 2r down to s 2^s l + (s+1) n. Skew components get the
/// largest even rank not above the row's rank. Results do not depend on jobs.
std::vector<ExperimentRow> bound_experiment(const Field& f, ExperimentConfig cfg);

std::string to_csv(const ExperimentConfig& cfg, const std::vector<ExperimentRow>& rows);

}  // namespace congruence
