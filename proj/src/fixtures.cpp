#include "congruence/fixtures.hpp"

namespace congruence::fixtures {

Scalar random_scalar(const Field& f, Rng& rng, int level) {
  if (!f.is_tower()) return f.from_int(rng.between(-5, 5));
  return f.element(level, rng.below(f.level_size(level)));
}

Scalar random_nonzero(const Field& f, Rng& rng, int level) {
  while (true) {
    Scalar x = random_scalar(f, rng, level);
    if (!x.is_zero()) return x;
  }
}

ScalarMatrix random_matrix(const Field& f, std::size_t rows, std::size_t cols, Rng& rng, int level) {
  ScalarMatrix m(f, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = random_scalar(f, rng, level);
  return m;
}

ScalarMatrix random_invertible(const Field& f, std::size_t n, Rng& rng, int level) {
  while (true) {
    ScalarMatrix m = random_matrix(f, n, n, rng, level);
    if (rank(m) == n) return m;
  }
}

ScalarMatrix random_full_rank(const Field& f, std::size_t rows, std::size_t cols, Rng& rng) {
  while (true) {
    ScalarMatrix m = random_matrix(f, rows, cols, rng);
    if (rank(m) == std::min(rows, cols)) return m;
  }
}

ScalarMatrix random_symmetric(const Field& f, std::size_t n, std::size_t r, Rng& rng) {
  if (r > n) throw Error(ErrorCode::InvalidArgument, "random_symmetric: rank exceeds size");
  ScalarMatrix d(f, n, n);
  for (std::size_t i = 0; i < r; ++i) d(i, i) = random_nonzero(f, rng);
  return congruence_apply(random_invertible(f, n, rng), d);
}

ScalarMatrix random_skew(const Field& f, std::size_t n, std::size_t r, Rng& rng) {
  if (r > n || r % 2 != 0) throw Error(ErrorCode::InvalidArgument, "random_skew: rank must be even and at most n");
  ScalarMatrix j(f, n, n);
  for (std::size_t i = 0; i + 1 < r; i += 2) {
    j(i, i + 1) = f.one();
    j(i + 1, i) = -f.one();
  }
  return congruence_apply(random_invertible(f, n, rng), j);
}

ScalarMatrix random_of_kind(const Field& f, SymKind kind, std::size_t n, Rng& rng) {
  ScalarMatrix m(f, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (kind == SymKind::General) {
        m(i, j) = random_scalar(f, rng);
      } else if (j > i) {
        m(i, j) = random_scalar(f, rng);
        m(j, i) = kind == SymKind::Skew ? -m(i, j) : m(i, j);
      } else if (j == i && kind == SymKind::Symmetric) {
        m(i, i) = random_scalar(f, rng);
      }
    }
  return m;
}

PlantedFree planted_free_subspace(const Field& f, const std::vector<SymKind>& kinds, std::size_t l, std::size_t extra,
                                  Rng& rng) {
  const std::size_t s = kinds.size();
  const std::size_t dim = (std::size_t{1} << s) * l;
  const std::size_t n = (s + 1) * dim + extra;
  const ScalarMatrix g = random_invertible(f, n, rng);
  MatrixTuple t(f, n, n);
  for (std::size_t i = 0; i < s; ++i) {
    // Unit entries make the first dim columns of the s components independent
    // inside rows [dim, (s+1) dim); random entries elsewhere keep it generic.
    ScalarMatrix b = random_of_kind(f, kinds[i], n, rng);
    const Scalar eps = kinds[i] == SymKind::Skew ? -f.one() : f.one();
    for (std::size_t r = dim; r < (s + 1) * dim; ++r)
      for (std::size_t c = 0; c < dim; ++c) {
        const Scalar v = r == dim + i * dim + c ? f.one() : f.zero();
        b(r, c) = v;
        b(c, r) = eps * v;
      }
    t.push(congruence_apply(g, b), kinds[i]);
  }
  ScalarMatrix e(f, n, dim);
  for (std::size_t c = 0; c < dim; ++c) e(c, c) = f.one();
  return {std::move(t), inverse(g).transpose() * e};
}

ConfigPoint random_config(const Field& f, std::size_t big_n, std::size_t p, std::size_t q, std::size_t n,
                          std::size_t r, Rng& rng) {
  ConfigPoint x;
  x.field = f;
  x.n = big_n;
  for (std::size_t i = 0; i < p; ++i) x.sym.push_back(random_symmetric(f, big_n, r, rng));
  for (std::size_t i = 0; i < q; ++i) x.alt.push_back(random_skew(f, big_n, r - r % 2, rng));
  x.col = random_full_rank(f, big_n, n, rng);
  return x;
}

TargetCorner random_target(const ConfigPoint& x, std::size_t l, Rng& rng) {
  TargetCorner t;
  t.l = l;
  for (std::size_t i = 0; i < x.sym.size(); ++i) t.sym.push_back(random_of_kind(x.field, SymKind::Symmetric, l, rng));
  for (std::size_t i = 0; i < x.alt.size(); ++i) t.alt.push_back(random_of_kind(x.field, SymKind::Skew, l, rng));
  t.col = random_matrix(x.field, l, x.cols(), rng);
  return t;
}

ConfigPoint identity_and_diagonal(const Field& f, std::size_t big_n) {
  ConfigPoint x;
  x.field = f;
  x.n = big_n;
  x.sym.push_back(ScalarMatrix::identity(f, big_n));
  ScalarMatrix d(f, big_n, big_n);
  const int level = f.is_tower() ? f.level_for_size(big_n) : 0;
  for (std::size_t i = 0; i < big_n; ++i)
    d(i, i) = f.is_tower() ? f.element(level, i) : f.from_int(static_cast<int64_t>(i));
  x.sym.push_back(std::move(d));
  x.col = ScalarMatrix(f, big_n, 0);
  return x;
}

}  // namespace congruence::fixtures
