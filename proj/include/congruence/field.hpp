#pragma once

// Exact scalars: rationals (GMP) and a lazily grown tower of quadratic
// extensions F_p = F_(0) < F_(1) < ... with F_(k) = F_(k-1)[t_k]/(t_k^2 - a_k).
//
// A level-k tower element is stored as 2^k base coefficients in the recursive
// basis: x = x0 + x1*t_k with x0, x1 level-(k-1) elements occupying the lower
// and upper halves of the coefficient array. Elements are always kept at their
// minimal level, which makes equality a plain comparison of canonical forms.

#include <array>
#include <atomic>
#include <compare>
#include <cstdint>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "congruence/error.hpp"
#include "congruence/rng.hpp"

namespace congruence {

enum class FieldKind { Rational, Tower };

inline constexpr int kMaxTowerLevel = 5;
inline constexpr std::size_t kMaxTowerCoeffs = std::size_t{1} << kMaxTowerLevel;

class Scalar;
class Field;

namespace detail {

struct FieldState {
  FieldKind kind = FieldKind::Rational;
  uint32_t p = 0;
  // Highest level built so far. Levels are only ever appended; readers never
  // observe a partially written level because the count is published last.
  std::atomic<int> top{0};
  // alpha[k] is a_k = t_k^2, an element of level k-1 (first 2^(k-1) slots).
  std::array<std::array<uint32_t, kMaxTowerCoeffs / 2>, kMaxTowerLevel + 1> alpha{};
  std::mutex extend_mutex;
};

struct TowerValue {
  uint8_t level = 0;
  std::array<uint32_t, kMaxTowerCoeffs> c{};
};

}  // namespace detail

/// Handle to a shared field configuration. Copies refer to the same field;
/// tower extensions made through any handle are visible to all of them.
class Field {
 public:
  Field() = default;

  static Field rational();
  /// Tower over F_p. p must be an odd prime below 2^31.
  static Field tower(uint32_t p);

  FieldKind kind() const;
  bool is_tower() const { return kind() == FieldKind::Tower; }
  uint32_t prime() const;
  bool valid() const { return state_ != nullptr; }

  /// Highest tower level currently built (0 for rationals).
  int top_level() const;
  /// Builds levels up to `level`, choosing each a_k by a deterministic scan.
  void ensure_level(int level) const;
  /// a_1, ..., a_top as scalars.
  std::vector<Scalar> adjoined() const;

  /// p^(2^level), saturating at UINT64_MAX.
  uint64_t level_size(int level) const;
  /// Smallest level whose field has at least min_size elements.
  int level_for_size(uint64_t min_size) const;

  Scalar zero() const;
  Scalar one() const;
  Scalar from_int(int64_t v) const;
  Scalar from_rational(const mpq_class& q) const;
  /// Tower element from 2^level coefficients (reduced mod p).
  Scalar from_coeffs(int level, std::span<const uint32_t> coeffs) const;
  /// The index-th element of F_(level) in canonical order: coefficient j is
  /// base-p digit j of index.
  Scalar element(int level, uint64_t index) const;
  /// Uniform element of the smallest level with at least min_size elements.
  /// For rationals: a uniform integer in [-min_size, min_size].
  Scalar sample(Rng& rng, uint64_t min_size) const;

  bool operator==(const Field& other) const { return state_ == other.state_; }

  detail::FieldState* state() const { return state_.get(); }

 private:
  explicit Field(std::shared_ptr<detail::FieldState> s) : state_(std::move(s)) {}
  friend class Scalar;

  std::shared_ptr<detail::FieldState> state_;
};

/// Immutable exact field element.
class Scalar {
 public:
  Scalar() = default;

  Field field() const { return Field(state_); }
  FieldKind kind() const { return state_->kind; }
  bool bound() const { return state_ != nullptr; }

  bool is_zero() const;
  bool is_one() const;
  /// Minimal tower level holding this element (0 for rationals).
  int level() const;
  /// Tower coefficients at the element's own level.
  std::span<const uint32_t> coeffs() const;
  const mpq_class& rational() const;

  Scalar operator+(const Scalar& b) const;
  Scalar operator-(const Scalar& b) const;
  Scalar operator*(const Scalar& b) const;
  Scalar operator/(const Scalar& b) const;
  Scalar operator-() const;
  Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
  Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
  Scalar& operator*=(const Scalar& b) { return *this = *this * b; }
  Scalar inverse() const;

  bool operator==(const Scalar& b) const;
  /// Canonical total order: rationals by value; tower elements by level, then
  /// by coefficients from the highest index down (i.e. by enumeration index).
  std::strong_ordering operator<=>(const Scalar& b) const;

  /// "a/b" for rationals, "[level:c0,c1,...]" for tower elements.
  std::string to_string() const;

 private:
  friend class Field;
  friend Scalar sqrt(const Scalar& a);
  friend bool is_square(const Scalar& a);

  Scalar(std::shared_ptr<detail::FieldState> s, detail::TowerValue v)
      : state_(std::move(s)), value_(v) {}
  Scalar(std::shared_ptr<detail::FieldState> s, mpq_class q)
      : state_(std::move(s)), value_(std::move(q)) {}

  void check_same(const Scalar& b) const;
  const detail::TowerValue& tower() const { return std::get<detail::TowerValue>(value_); }

  std::shared_ptr<detail::FieldState> state_;
  std::variant<detail::TowerValue, mpq_class> value_;
};

/// Square root. For tower elements that are non-squares at their own level the
/// tower is extended (once) and the root is returned one level up. Among the
/// two roots the smaller in canonical order is returned; for rationals the
/// non-negative root. Throws NoSquareRoot for a rational non-square.
Scalar sqrt(const Scalar& a);

/// Whether a is a square at its own minimal level (rationals: in Q).
bool is_square(const Scalar& a);

}  // namespace congruence
