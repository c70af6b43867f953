#pragma once

// Curves G(t) in GL_N(K[t, 1/t]) whose action on a configuration of high rank
// reproduces an arbitrary target corner in the limit t -> 0, together with an
// independent verifier that trusts nothing from the construction.

#include <optional>
#include <string>
#include <vector>

#include "congruence/normal_form.hpp"

namespace congruence {

/// x = (x_sym, x_alt, x_col, x_fin). x_col is N x n and transforms as C -> gC;
/// x_fin is carried along untouched.
struct ConfigPoint {
  Field field;
  std::size_t n = 0;
  std::vector<ScalarMatrix> sym;
  std::vector<ScalarMatrix> alt;
  ScalarMatrix col;
  std::vector<Scalar> fin;

  std::size_t s() const { return sym.size() + alt.size(); }
  std::size_t cols() const { return col.cols(); }
  void validate() const;
  /// (x_sym, x_alt) as one tuple, symmetric components first.
  MatrixTuple tuple() const;
  MatrixTuple sym_tuple() const;
  MatrixTuple alt_tuple() const;
};

ConfigPoint congruence_apply(const ScalarMatrix& g, const ConfigPoint& x);

struct TargetCorner {
  std::size_t l = 0;
  std::vector<ScalarMatrix> sym;
  std::vector<ScalarMatrix> alt;
  ScalarMatrix col;  // l x n

  void validate(const ConfigPoint& x) const;
};

struct StageCheck {
  std::string stage;
  bool ok = true;
  std::string detail;
};

struct EntryFailure {
  std::string component;  // "sym[0]", "alt[1]", "col", ...
  std::size_t row = 0;
  std::size_t col = 0;
  std::string reason;
};

struct VerificationReport {
  bool det_ok = false;
  std::string det_detail;
  std::size_t entries_checked = 0;
  std::vector<EntryFailure> failures;

  bool passed() const { return det_ok && failures.empty(); }
};

struct WitnessCurve {
  LaurentMatrix g;
  /// det g = det_coeff * t^det_degree
  Scalar det_coeff;
  int det_degree = 0;
  /// Whether every rank precondition was certified by enumeration (false
  /// when some were accepted as assertions because of the budget, or skipped
  /// in experiment mode).
  bool ranks_certified = false;
  std::vector<StageCheck> stages;
  VerificationReport report;
};

struct WitnessOptions {
  FreeSubspaceOptions free;
  EnumerationOptions enumeration;
  /// Gate on the proven rank bound. Experiment mode turns this off and simply
  /// attempts the construction.
  bool enforce_rank_bound = true;
};

/// s 2^s l + 2 (s+1) n
std::size_t required_rank(std::size_t s, std::size_t l, std::size_t n);

/// Symmetric-only construction: needs tuple rank >= p 2^p l.
WitnessCurve witness_sym(const MatrixTuple& t, const std::vector<ScalarMatrix>& targets, std::size_t l, Rng& rng,
                         const WitnessOptions& opt = {});

/// Full construction for (x_sym, x_alt, x_col): needs tuple ranks of x_sym and
/// x_alt >= 2r with r = required_rank(s, l, n), and rank(x_col) = n.
/// Throws RankPrecondition when a certified rank is too small, NotFound when
/// no free subspace is found, VerificationFailed if the result does not
/// verify.
WitnessCurve witness_full(const ConfigPoint& x, const TargetCorner& target, Rng& rng, const WitnessOptions& opt = {});

/// Recomputes the corners of G x G^T and G x_col over K[t, 1/t], checks their
/// degrees and limits, and checks det G = c t^k by evaluation at enough
/// points to pin down a polynomial identity.
VerificationReport verify_witness(const ConfigPoint& x, const TargetCorner& target, const LaurentMatrix& g,
                                  const Scalar& det_coeff, int det_degree);

/// phi_i = sum_{j < p-1} lambda(i,j) x_sym[j] + lambda(i,p-1) X X^T. Every
/// output tuple has tuple rank at most r = X.cols().
std::vector<ScalarMatrix> phi_parametrize(std::size_t p, const std::vector<ScalarMatrix>& x_sym, const ScalarMatrix& x,
                                          const ScalarMatrix& lambda);

}  // namespace congruence
