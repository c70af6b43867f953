#pragma once

// Exact linear algebra over a field: ranks, kernels, solves, inverses,
// determinants, basis completion and the symmetric/skew split.
//
// Ranks over Q use fraction-free (Bareiss) elimination on row-scaled integer
// matrices; over the tower, plain Gaussian elimination, with matrices whose
// entries all lie in F_p routed through the SIMD mod-p kernels.

#include <optional>
#include <utility>

#include "congruence/matrix.hpp"

namespace congruence {

enum class SymKind { Symmetric, Skew, General };

std::string_view to_string(SymKind kind);
SymKind sym_kind_from_string(std::string_view s);

std::size_t rank(const ScalarMatrix& m);

/// Columns form a basis of {x : m x = 0}; cols() == 0 when trivial.
ScalarMatrix kernel(const ScalarMatrix& m);

/// Some x with m x = b; throws NoSolution if inconsistent.
ScalarMatrix solve(const ScalarMatrix& m, const ScalarMatrix& b);

ScalarMatrix inverse(const ScalarMatrix& m);

Scalar determinant(const ScalarMatrix& m);

/// Invertible n x n matrix whose leading columns are the columns of v.
/// Remaining columns are standard basis vectors picked greedily in order.
ScalarMatrix basis_completion(const ScalarMatrix& v, std::size_t n);

bool is_symmetric(const ScalarMatrix& m);
bool is_skew(const ScalarMatrix& m);
bool satisfies(const ScalarMatrix& m, SymKind kind);

struct SymSkewParts {
  ScalarMatrix symmetric;
  ScalarMatrix skew;
};

/// ((M + M^T) / 2, (M - M^T) / 2).
SymSkewParts sym_skew_decompose(const ScalarMatrix& m);

/// Largest tower level among the entries (0 over Q).
int max_level(const ScalarMatrix& m);

}  // namespace congruence
