#pragma once

// Congruence normal forms: single symmetric / skew matrices, the staggered
// block form of a whole tuple, and the scaling curves that kill everything
// outside the first l rows and columns in the limit t -> 0.

#include <string>
#include <vector>

#include "congruence/free_subspace.hpp"

namespace congruence {

struct SymmetricCanonical {
  ScalarMatrix g;
  std::size_t rank = 0;
  /// g M g^T = diag(diagonal) + 0. All ones when normalized.
  std::vector<Scalar> diagonal;
  /// False over Q, where the diagonal is not scaled to ones.
  bool normalized = false;
  /// Rationals only: whether each diagonal entry is a square in Q, and its sign.
  std::vector<bool> square;
  std::vector<int> sign;
};

/// Symmetric Gaussian congruence. Over the tower the result is Id_r + 0
/// (square roots may extend the tower); over Q a nonzero diagonal.
SymmetricCanonical symmetric_canonical(const ScalarMatrix& m);

struct SkewCanonical {
  ScalarMatrix g;
  std::size_t rank = 0;
};

/// g M g^T = r/2 copies of [[0,1],[-1,0]] followed by zeros. Any field.
SkewCanonical skew_canonical(const ScalarMatrix& m);

/// The canonical matrix of the given kind and rank (Id_r + 0 or symplectic).
ScalarMatrix canonical_matrix(const Field& f, SymKind kind, std::size_t n, std::size_t r);

/// size x size matrix of the given kind and rank r whose leading
/// corner x corner block is zero. Requires corner <= size / 2, r <= size and,
/// for Skew, r even.
ScalarMatrix rank_r_zero_corner_witness(const Field& f, SymKind kind, std::size_t size, std::size_t corner,
                                        std::size_t r);

/// g with g A g^T = B for two matrices of the same kind and rank.
/// Throws NoSquareRoot for symmetric rational inputs whose square classes
/// differ.
ScalarMatrix congruence_transport(SymKind kind, const ScalarMatrix& a, const ScalarMatrix& b);

/// Forced entries of the staggered form for s components, block size l and
/// ambient size N: zero l x l corner; Id_l in block i+1 of the first l columns
/// of component i; zeros below; the same transposed (times -1 for skew) in
/// the first l rows. With `strengthened`, the (j,k) blocks for
/// j,k in 2..s+1 must vanish too.
struct BlockPattern {
  std::size_t s = 0;
  std::size_t l = 0;
  std::size_t n = 0;
  std::vector<SymKind> kinds;
  bool strengthened = false;
};

/// Human-readable list of every forced entry that does not hold (empty when
/// the tuple matches).
std::vector<std::string> pattern_violations(const BlockPattern& pattern, const MatrixTuple& t);

struct BlockNormalForm {
  ScalarMatrix g;
  MatrixTuple transformed;
  BlockPattern pattern;
};

/// g such that g . T matches BlockPattern(s, l, N), given V (N x 2^s l) with
/// dim(T V) = s 2^s l. Throws HypothesisViolation when that fails, and
/// VerificationFailed if any internal stage check fails.
BlockNormalForm block_normal_form(const MatrixTuple& t, const ScalarMatrix& v, std::size_t l);

/// diag(t^e_1, ..., t^e_N)
LaurentMatrix diagonal_curve(const Field& f, const std::vector<int>& exponents);

/// diag(t^-1 Id_l, t Id_{N-l})
LaurentMatrix closure_scaling_curve(const Field& f, std::size_t l, std::size_t n);

}  // namespace congruence
