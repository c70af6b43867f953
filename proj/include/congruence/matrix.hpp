#pragma once

// Dense row-major matrices over a field (Scalar) or over the Laurent ring.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "congruence/field.hpp"
#include "congruence/laurent.hpp"

namespace congruence {

template <class T>
struct RingTraits;

template <>
struct RingTraits<Scalar> {
  static Scalar zero(const Field& f) { return f.zero(); }
  static Scalar one(const Field& f) { return f.one(); }
  static bool is_zero(const Scalar& x) { return x.is_zero(); }
};

template <>
struct RingTraits<Laurent> {
  static Laurent zero(const Field& f) { return Laurent(f); }
  static Laurent one(const Field& f) { return Laurent::constant(f.one()); }
  static bool is_zero(const Laurent& x) { return x.is_zero(); }
};

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(Field f, std::size_t rows, std::size_t cols)
      : field_(std::move(f)), rows_(rows), cols_(cols), data_(rows * cols, RingTraits<T>::zero(field_)) {}

  static Matrix identity(const Field& f, std::size_t n) {
    Matrix m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = RingTraits<T>::one(f);
    return m;
  }

  const Field& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  const std::vector<T>& data() const { return data_; }

  Matrix transpose() const {
    Matrix t(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) throw Error(ErrorCode::ShapeMismatch, "block out of range");
    Matrix b(field_, nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
  }

  void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
    if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_) throw Error(ErrorCode::ShapeMismatch, "block out of range");
    for (std::size_t i = 0; i < b.rows_; ++i)
      for (std::size_t j = 0; j < b.cols_; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }

  Matrix column(std::size_t j) const { return block(0, j, rows_, 1); }

  bool is_zero() const {
    for (const auto& x : data_)
      if (!RingTraits<T>::is_zero(x)) return false;
    return true;
  }

  bool operator==(const Matrix& b) const {
    if (rows_ != b.rows_ || cols_ != b.cols_) return false;
    for (std::size_t k = 0; k < data_.size(); ++k)
      if (!(data_[k] == b.data_[k])) return false;
    return true;
  }

  Matrix operator+(const Matrix& b) const {
    check_shape(b);
    Matrix r = *this;
    for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] += b.data_[k];
    return r;
  }

  Matrix operator-(const Matrix& b) const {
    check_shape(b);
    Matrix r = *this;
    for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] -= b.data_[k];
    return r;
  }

  Matrix operator-() const {
    Matrix r = *this;
    for (auto& x : r.data_) x = -x;
    return r;
  }

  std::string to_string() const {
    std::string s;
    for (std::size_t i = 0; i < rows_; ++i) {
      s += "[";
      for (std::size_t j = 0; j < cols_; ++j) s += (j ? ", " : "") + (*this)(i, j).to_string();
      s += "]\n";
    }
    return s;
  }

 private:
  void check_shape(const Matrix& b) const {
    if (rows_ != b.rows_ || cols_ != b.cols_) throw Error(ErrorCode::ShapeMismatch, "matrix shapes differ");
  }

  Field field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using ScalarMatrix = Matrix<Scalar>;
using LaurentMatrix = Matrix<Laurent>;

ScalarMatrix operator*(const ScalarMatrix& a, const ScalarMatrix& b);
LaurentMatrix operator*(const LaurentMatrix& a, const LaurentMatrix& b);
ScalarMatrix operator*(const Scalar& c, const ScalarMatrix& m);

/// Constant embedding of a field matrix into the Laurent ring.
LaurentMatrix to_laurent(const ScalarMatrix& m);
/// Entrywise limit at t = 0 (throws NegativeDegree when it does not exist).
ScalarMatrix eval_at_zero(const LaurentMatrix& m);
/// Entrywise value at a nonzero point.
ScalarMatrix evaluate(const LaurentMatrix& m, const Scalar& t);
/// Smallest degree over all nonzero entries; nullopt for the zero matrix.
std::optional<int> min_degree(const LaurentMatrix& m);

/// [a | b]
ScalarMatrix hstack(const ScalarMatrix& a, const ScalarMatrix& b);
/// Column vector from scalars.
ScalarMatrix column_vector(const Field& f, const std::vector<Scalar>& v);
/// diag(d_1, ..., d_n)
ScalarMatrix diagonal(const Field& f, const std::vector<Scalar>& d);

/// g M g^T
ScalarMatrix congruence_apply(const ScalarMatrix& g, const ScalarMatrix& m);
LaurentMatrix congruence_apply(const LaurentMatrix& g, const LaurentMatrix& m);

}  // namespace congruence
