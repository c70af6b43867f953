#pragma once

// Vectors and subspaces whose images under all components of a tuple are
// jointly independent: dim(M_1 V + ... + M_s V) = dim(V) * s.

#include <cstdint>

#include "congruence/tuple_rank.hpp"

namespace congruence {

struct FreeSubspaceOptions {
  /// Random candidates are drawn from a field with at least size_factor * s
  /// elements, so a fixed nonzero minor of degree s vanishes with
  /// probability at most 1 / size_factor.
  uint64_t size_factor = 2;
  int retries = 16;
  /// Points of P^{N-1} visited by the deterministic fallback.
  uint64_t grid_budget = 100'000;
  /// Extra tower levels tried after the fallback fails.
  int escalations = 2;
};

struct FreeSearchStats {
  int random_draws = 0;
  uint64_t grid_points = 0;
  bool used_fallback = false;
  int escalations = 0;
};

/// v (cols x 1) with rank[M_1 v | ... | M_s v] = s. Throws NotFound.
ScalarMatrix find_free_vector(const MatrixTuple& t, Rng& rng, const FreeSubspaceOptions& opt = {},
                              FreeSearchStats* stats = nullptr);

struct Quotient {
  /// Induced tuple on the coordinate complements.
  MatrixTuple tuple;
  /// cols x (cols - dim V'') matrix mapping complement coordinates back into
  /// the original domain.
  ScalarMatrix lift;
};

/// Induced tuple on complements of V'' (domain, columns of v) and W''
/// (codomain, columns of w), in the coordinates of basis completions.
Quotient quotient_tuple(const MatrixTuple& t, const ScalarMatrix& v, const ScalarMatrix& w);

/// rank[M_1 V | ... | M_s V]
std::size_t image_rank(const MatrixTuple& t, const ScalarMatrix& basis);

struct FreeSubspace {
  ScalarMatrix basis;  // cols x l
  std::size_t image_rank = 0;
  FreeSearchStats stats;
};

/// l-dimensional free subspace, built one vector at a time through quotients
/// and checked once at the end. Throws NotFound or VerificationFailed.
FreeSubspace find_free_subspace(const MatrixTuple& t, std::size_t l, Rng& rng, const FreeSubspaceOptions& opt = {});

}  // namespace congruence
