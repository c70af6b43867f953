#pragma once

// Tuples of matrices and their rank: the minimum of rank(sum c_i M_i) over all
// nonzero coefficient vectors c. Over a finite tower level the minimum is
// found by enumerating projective points; over Q only a lower bound obtained
// from reductions modulo small primes is available.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "congruence/linalg.hpp"

namespace congruence {

/// s matrices of one shape over one field. Square tuples carry a SymKind per
/// component; quotient tuples are rectangular and tagged General.
struct MatrixTuple {
  Field field;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<ScalarMatrix> mats;
  std::vector<SymKind> kinds;

  MatrixTuple() = default;
  MatrixTuple(Field f, std::size_t rows, std::size_t cols);
  /// Square tuple; throws if a component violates its kind.
  MatrixTuple(Field f, std::size_t n, std::vector<ScalarMatrix> mats, std::vector<SymKind> kinds);

  std::size_t size() const { return mats.size(); }
  void push(ScalarMatrix m, SymKind kind);
  /// Throws ShapeMismatch / HypothesisViolation on broken invariants.
  void validate() const;

  /// Restriction to the first k columns (a coordinate subspace of the domain).
  MatrixTuple leading_columns(std::size_t k) const;
};

/// g M_i g^T for every component.
MatrixTuple congruence_apply(const ScalarMatrix& g, const MatrixTuple& t);

/// sum c_i M_i
ScalarMatrix combination(const MatrixTuple& t, const std::vector<Scalar>& coeffs);

std::size_t rank_at(const MatrixTuple& t, const std::vector<Scalar>& coeffs);

/// Componentwise ranks.
std::vector<std::size_t> component_ranks(const MatrixTuple& t);

struct RankCertificate {
  /// nullopt encodes infinity (empty tuple).
  std::optional<std::size_t> value;
  std::vector<Scalar> witness;
  /// value is the exact minimum over the enumerated domain.
  bool certified = false;
  /// value is a proven lower bound (rational reduction) rather than exact.
  bool lower_bound = false;
  /// Tower level enumerated (or -1 for the rational lower bound).
  int level = 0;
  uint64_t points = 0;
  std::string search_domain;
};

struct EnumerationOptions {
  /// Upper bound on field_size^s.
  uint64_t budget = 2'000'000;
  int jobs = 1;
};

/// Exact minimum over P^{s-1}(F_(level)). The level is raised to the largest
/// level among the entries when lower. Representatives have first nonzero
/// coefficient 1 and are visited in a fixed order; the witness is the first
/// minimizer in that order.
RankCertificate tuple_rank_exhaustive(const MatrixTuple& t, int level = 0, const EnumerationOptions& opt = {});

/// Rational tuples: maximum over a few primes of the exact tuple rank of the
/// reduction, which bounds the rational tuple rank from below. Never certified.
RankCertificate tuple_rank_rational_bound(const MatrixTuple& t, const EnumerationOptions& opt = {});

/// Dispatches on the field kind.
RankCertificate tuple_rank(const MatrixTuple& t, const EnumerationOptions& opt = {});

/// Whether the certificate proves tuple rank >= r.
bool rank_at_least(const RankCertificate& c, std::size_t r);

/// Least k such that the first k columns still have tuple rank >= r.
/// Throws RankPrecondition if the full tuple does not.
std::size_t minimal_truncation(const MatrixTuple& t, std::size_t r, int level = 0,
                               const EnumerationOptions& opt = {});

}  // namespace congruence
