#include "congruence/linalg.hpp"

#include <algorithm>

#include "congruence/kernels.hpp"

namespace congruence {

std::string_view to_string(SymKind kind) {
  switch (kind) {
    case SymKind::Symmetric: return "symmetric";
    case SymKind::Skew: return "skew";
    case SymKind::General: return "general";
  }
  return "general";
}

SymKind sym_kind_from_string(std::string_view s) {
  if (s == "symmetric" || s == "sym") return SymKind::Symmetric;
  if (s == "skew" || s == "alt") return SymKind::Skew;
  if (s == "general") return SymKind::General;
  throw Error(ErrorCode::MalformedInput, "unknown matrix kind '" + std::string(s) + "'");
}

namespace {

struct Echelon {
  ScalarMatrix r;
  std::vector<std::size_t> pivots;
};

// Reduced row echelon form over the field.
Echelon rref(ScalarMatrix a) {
  const std::size_t rows = a.rows(), cols = a.cols();
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < rows; ++col) {
    std::size_t piv = row;
    while (piv < rows && a(piv, col).is_zero()) ++piv;
    if (piv == rows) continue;
    if (piv != row)
      for (std::size_t j = 0; j < cols; ++j) std::swap(a(piv, j), a(row, j));
    const Scalar inv = a(row, col).inverse();
    for (std::size_t j = col; j < cols; ++j) a(row, j) = a(row, j) * inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == row || a(i, col).is_zero()) continue;
      const Scalar factor = a(i, col);
      for (std::size_t j = col; j < cols; ++j)
        if (!a(row, j).is_zero()) a(i, j) -= factor * a(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return {std::move(a), std::move(pivots)};
}

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

// Fraction-free elimination on the integer matrix obtained by clearing each
// row's denominators.
std::size_t bareiss_rank(const ScalarMatrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<mpz_class> a(rows * cols);
  for (std::size_t i = 0; i < rows; ++i) {
    mpz_class l = 1;
    for (std::size_t j = 0; j < cols; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).rational().get_den_mpz_t());
    for (std::size_t j = 0; j < cols; ++j) {
      const mpq_class& q = m(i, j).rational();
      a[i * cols + j] = q.get_num() * (l / q.get_den());
    }
  }
  mpz_class prev = 1;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t piv = rank;
    while (piv < rows && a[piv * cols + col] == 0) ++piv;
    if (piv == rows) continue;
    if (piv != rank)
      for (std::size_t j = 0; j < cols; ++j) std::swap(a[piv * cols + j], a[rank * cols + j]);
    const mpz_class pivot = a[rank * cols + col];
    for (std::size_t i = rank + 1; i < rows; ++i) {
      const mpz_class lead = a[i * cols + col];
      for (std::size_t j = col + 1; j < cols; ++j) {
        mpz_class v = a[i * cols + j] * pivot - lead * a[rank * cols + j];
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        a[i * cols + j] = std::move(v);
      }
      a[i * cols + col] = 0;
    }
    prev = pivot;
    ++rank;
  }
  return rank;
}

}  // namespace

std::size_t rank(const ScalarMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  if (!m.field().is_tower()) return bareiss_rank(m);
  if (auto residues = base_residues(m))
    return kernels::rank_mod_p(std::move(*residues), m.rows(), m.cols(), m.field().prime());
  return rref(m).pivots.size();
}

ScalarMatrix kernel(const ScalarMatrix& m) {
  const auto [r, pivots] = rref(m);
  const std::size_t cols = m.cols();
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  ScalarMatrix basis(m.field(), cols, cols - pivots.size());
  std::size_t k = 0;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    basis(free, k) = m.field().one();
    for (std::size_t i = 0; i < pivots.size(); ++i) basis(pivots[i], k) = -r(i, free);
    ++k;
  }
  return basis;
}

ScalarMatrix solve(const ScalarMatrix& m, const ScalarMatrix& b) {
  if (m.rows() != b.rows()) throw Error(ErrorCode::ShapeMismatch, "solve: right-hand side has the wrong height");
  const auto [r, pivots] = rref(hstack(m, b));
  const std::size_t n = m.cols();
  for (std::size_t i = 0; i < pivots.size(); ++i)
    if (pivots[i] >= n) throw Error(ErrorCode::NoSolution, "linear system is inconsistent");
  ScalarMatrix x(m.field(), n, b.cols());
  for (std::size_t i = 0; i < pivots.size(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) x(pivots[i], j) = r(i, n + j);
  return x;
}

ScalarMatrix inverse(const ScalarMatrix& m) {
  if (!m.square()) throw Error(ErrorCode::ShapeMismatch, "inverse of a non-square matrix");
  const std::size_t n = m.rows();
  const auto [r, pivots] = rref(hstack(m, ScalarMatrix::identity(m.field(), n)));
  if (pivots.size() < n || (n > 0 && pivots[n - 1] != n - 1))
    throw Error(ErrorCode::Singular, "matrix is not invertible");
  return r.block(0, n, n, n);
}

Scalar determinant(const ScalarMatrix& m) {
  if (!m.square()) throw Error(ErrorCode::ShapeMismatch, "determinant of a non-square matrix");
  ScalarMatrix a = m;
  const std::size_t n = a.rows();
  Scalar det = m.field().one();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a(piv, col).is_zero()) ++piv;
    if (piv == n) return m.field().zero();
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(piv, j), a(col, j));
      det = -det;
    }
    det *= a(col, col);
    const Scalar inv = a(col, col).inverse();
    for (std::size_t i = col + 1; i < n; ++i) {
      if (a(i, col).is_zero()) continue;
      const Scalar factor = a(i, col) * inv;
      for (std::size_t j = col; j < n; ++j)
        if (!a(col, j).is_zero()) a(i, j) -= factor * a(col, j);
    }
  }
  return det;
}

ScalarMatrix basis_completion(const ScalarMatrix& v, std::size_t n) {
  if (v.rows() != n) throw Error(ErrorCode::ShapeMismatch, "basis_completion: vectors have the wrong length");
  const auto [r, pivots] = rref(v.transpose());
  if (pivots.size() != v.cols())
    throw Error(ErrorCode::DependentColumns, "basis_completion: input columns are linearly dependent");
  // Coordinates that are not pivots of V^T complete V to a basis.
  std::vector<bool> is_pivot(n, false);
  for (auto c : pivots) is_pivot[c] = true;
  ScalarMatrix q(v.field(), n, n);
  q.set_block(0, 0, v);
  std::size_t k = v.cols();
  for (std::size_t i = 0; i < n; ++i)
    if (!is_pivot[i]) q(i, k++) = v.field().one();
  return q;
}

bool is_symmetric(const ScalarMatrix& m) {
  if (!m.square()) return false;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i + 1; j < m.cols(); ++j)
      if (!(m(i, j) == m(j, i))) return false;
  return true;
}

bool is_skew(const ScalarMatrix& m) {
  if (!m.square()) return false;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (!m(i, i).is_zero()) return false;
    for (std::size_t j = i + 1; j < m.cols(); ++j)
      if (!(m(i, j) == -m(j, i))) return false;
  }
  return true;
}

bool satisfies(const ScalarMatrix& m, SymKind kind) {
  switch (kind) {
    case SymKind::Symmetric: return is_symmetric(m);
    case SymKind::Skew: return is_skew(m);
    case SymKind::General: return true;
  }
  return false;
}

SymSkewParts sym_skew_decompose(const ScalarMatrix& m) {
  if (!m.square()) throw Error(ErrorCode::ShapeMismatch, "sym_skew_decompose needs a square matrix");
  const Scalar half = m.field().from_int(2).inverse();
  const ScalarMatrix t = m.transpose();
  return {half * (m + t), half * (m - t)};
}

int max_level(const ScalarMatrix& m) {
  int level = 0;
  for (const auto& x : m.data()) level = std::max(level, x.level());
  return level;
}

}  // namespace congruence
