#pragma once

// Seeded generators for tests, demos and the CLI `gen` command.

#include "congruence/orbit_witness.hpp"

namespace congruence::fixtures {

/// Uniform element of the given tower level; over Q an integer in [-5, 5].
Scalar random_scalar(const Field& f, Rng& rng, int level = 0);
Scalar random_nonzero(const Field& f, Rng& rng, int level = 0);

ScalarMatrix random_matrix(const Field& f, std::size_t rows, std::size_t cols, Rng& rng, int level = 0);
ScalarMatrix random_invertible(const Field& f, std::size_t n, Rng& rng, int level = 0);
/// rows x cols with rank min(rows, cols).
ScalarMatrix random_full_rank(const Field& f, std::size_t rows, std::size_t cols, Rng& rng);

/// g diag(d_1, ..., d_r, 0, ...) g^T with random invertible g and nonzero d.
ScalarMatrix random_symmetric(const Field& f, std::size_t n, std::size_t rank, Rng& rng);
/// g J g^T with J = rank/2 symplectic blocks; rank must be even.
ScalarMatrix random_skew(const Field& f, std::size_t n, std::size_t rank, Rng& rng);
/// Random entries subject only to the kind.
ScalarMatrix random_of_kind(const Field& f, SymKind kind, std::size_t n, Rng& rng);

struct PlantedFree {
  MatrixTuple tuple;
  ScalarMatrix basis;  // N x 2^s l with dim(T basis) = s 2^s l
};

/// A tuple with the given kinds and a free subspace of dimension 2^s l,
/// hidden by a random change of coordinates. N = (s+1) 2^s l + extra.
PlantedFree planted_free_subspace(const Field& f, const std::vector<SymKind>& kinds, std::size_t l, std::size_t extra,
                                  Rng& rng);

/// p symmetric and q skew components of size N with the given rank (rounded
/// down to even for skew ones) and a full-rank N x n column block.
ConfigPoint random_config(const Field& f, std::size_t big_n, std::size_t p, std::size_t q, std::size_t n,
                          std::size_t rank, Rng& rng);

TargetCorner random_target(const ConfigPoint& x, std::size_t l, Rng& rng);

/// (Id_N, diag(mu_1, ..., mu_N)) with distinct mu taken in canonical order
/// from the smallest tower level holding N elements.
ConfigPoint identity_and_diagonal(const Field& f, std::size_t big_n);

}  // namespace congruence::fixtures
