#pragma once

// Laurent polynomials K[t, 1/t]. Closure limits become constant-term
// extraction: a curve G(t) converges at t = 0 exactly when no negative
// degree survives.

#include <optional>
#include <utility>
#include <vector>

#include "congruence/field.hpp"

namespace congruence {

class Laurent {
 public:
  using Term = std::pair<int, Scalar>;

  Laurent() = default;
  /// The zero polynomial over f.
  explicit Laurent(Field f) : field_(std::move(f)) {}
  /// c * t^degree.
  static Laurent monomial(const Scalar& c, int degree);
  static Laurent constant(const Scalar& c) { return monomial(c, 0); }

  const Field& field() const { return field_; }
  bool is_zero() const { return terms_.empty(); }
  /// Sorted by degree; no zero coefficients are ever stored.
  const std::vector<Term>& terms() const { return terms_; }
  /// Undefined (throws) for the zero polynomial.
  int min_degree() const;
  int max_degree() const;
  Scalar coeff(int degree) const;

  Laurent operator+(const Laurent& b) const;
  Laurent operator-(const Laurent& b) const;
  Laurent operator*(const Laurent& b) const;
  Laurent operator-() const;
  Laurent& operator+=(const Laurent& b) { return *this = *this + b; }
  Laurent& operator-=(const Laurent& b) { return *this = *this - b; }
  Laurent& operator*=(const Laurent& b) { return *this = *this * b; }
  Laurent scaled(const Scalar& c) const;
  /// t^k * this.
  Laurent shifted(int k) const;

  bool operator==(const Laurent& b) const;

  /// Degree-0 coefficient; throws NegativeDegree if a negative-degree term
  /// is present (the limit at t = 0 does not exist).
  Scalar eval_at_zero() const;
  /// Value at a nonzero point.
  Scalar evaluate(const Scalar& t) const;

  struct Unit {
    Scalar coeff;
    int degree;
  };
  /// Some (c, k) with this = c t^k, c != 0; nullopt otherwise.
  std::optional<Unit> unit() const;
  bool is_unit() const { return unit().has_value(); }

  std::string to_string() const;

 private:
  void check_same(const Laurent& b) const;

  Field field_;
  std::vector<Term> terms_;
};

}  // namespace congruence
