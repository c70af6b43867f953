#include "congruence/matrix.hpp"

#include "congruence/kernels.hpp"

namespace congruence {

namespace {

// Entries of a tower matrix living in F_p, or nothing if any entry does not.
std::optional<std::vector<uint32_t>> base_residues(const ScalarMatrix& m) {
  if (!m.field().is_tower()) return std::nullopt;
  std::vector<uint32_t> out;
  out.reserve(m.rows() * m.cols());
  for (const auto& x : m.data()) {
    if (x.level() != 0) return std::nullopt;
    out.push_back(x.coeffs()[0]);
  }
  return out;
}

}  // namespace

ScalarMatrix operator*(const ScalarMatrix& a, const ScalarMatrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorCode::ShapeMismatch, "matrix product: inner dimensions differ");
  if (!(a.field() == b.field())) throw Error(ErrorCode::MixedFields, "matrix product over different fields");
  const Field& f = a.field();
  ScalarMatrix c(f, a.rows(), b.cols());
  if (auto ra = base_residues(a)) {
    if (auto rb = base_residues(b)) {
      const auto prod = kernels::matmul_mod_p(*ra, *rb, a.rows(), a.cols(), b.cols(), f.prime());
      for (std::size_t i = 0; i < c.rows(); ++i)
        for (std::size_t j = 0; j < c.cols(); ++j) c(i, j) = f.from_int(prod[i * c.cols() + j]);
      return c;
    }
  }
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Scalar& x = a(i, k);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        const Scalar& y = b(k, j);
        if (!y.is_zero()) c(i, j) += x * y;
      }
    }
  return c;
}

LaurentMatrix operator*(const LaurentMatrix& a, const LaurentMatrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorCode::ShapeMismatch, "matrix product: inner dimensions differ");
  LaurentMatrix c(a.field(), a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Laurent& x = a(i, k);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        const Laurent& y = b(k, j);
        if (!y.is_zero()) c(i, j) += x * y;
      }
    }
  return c;
}

ScalarMatrix operator*(const Scalar& c, const ScalarMatrix& m) {
  ScalarMatrix r(m.field(), m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = c * m(i, j);
  return r;
}

LaurentMatrix to_laurent(const ScalarMatrix& m) {
  LaurentMatrix r(m.field(), m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Laurent::constant(m(i, j));
  return r;
}

ScalarMatrix eval_at_zero(const LaurentMatrix& m) {
  ScalarMatrix r(m.field(), m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j).eval_at_zero();
  return r;
}

ScalarMatrix evaluate(const LaurentMatrix& m, const Scalar& t) {
  ScalarMatrix r(m.field(), m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j).evaluate(t);
  return r;
}

std::optional<int> min_degree(const LaurentMatrix& m) {
  std::optional<int> lo;
  for (const auto& x : m.data())
    if (!x.is_zero()) lo = lo ? std::min(*lo, x.min_degree()) : x.min_degree();
  return lo;
}

ScalarMatrix hstack(const ScalarMatrix& a, const ScalarMatrix& b) {
  if (a.rows() != b.rows()) throw Error(ErrorCode::ShapeMismatch, "hstack: row counts differ");
  ScalarMatrix r(a.field(), a.rows(), a.cols() + b.cols());
  r.set_block(0, 0, a);
  r.set_block(0, a.cols(), b);
  return r;
}

ScalarMatrix column_vector(const Field& f, const std::vector<Scalar>& v) {
  ScalarMatrix r(f, v.size(), 1);
  for (std::size_t i = 0; i < v.size(); ++i) r(i, 0) = v[i];
  return r;
}

ScalarMatrix diagonal(const Field& f, const std::vector<Scalar>& d) {
  ScalarMatrix r(f, d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) r(i, i) = d[i];
  return r;
}

ScalarMatrix congruence_apply(const ScalarMatrix& g, const ScalarMatrix& m) {
  if (!g.square() || !m.square() || g.cols() != m.rows())
    throw Error(ErrorCode::ShapeMismatch, "congruence needs square g and M of the same size");
  return g * m * g.transpose();
}

LaurentMatrix congruence_apply(const LaurentMatrix& g, const LaurentMatrix& m) {
  if (!g.square() || !m.square() || g.cols() != m.rows())
    throw Error(ErrorCode::ShapeMismatch, "congruence needs square g and M of the same size");
  return g * m * g.transpose();
}

}  // namespace congruence
