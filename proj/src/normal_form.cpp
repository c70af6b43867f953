#include "congruence/normal_form.hpp"

#include <algorithm>

namespace congruence {

namespace {

void swap_rows(ScalarMatrix& a, std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t c = 0; c < a.cols(); ++c) std::swap(a(i, c), a(j, c));
}

void swap_cols(ScalarMatrix& a, std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t r = 0; r < a.rows(); ++r) std::swap(a(r, i), a(r, j));
}

// row_dst += f * row_src
void add_row(ScalarMatrix& a, std::size_t dst, std::size_t src, const Scalar& f) {
  for (std::size_t c = 0; c < a.cols(); ++c)
    if (!a(src, c).is_zero()) a(dst, c) += f * a(src, c);
}

void add_col(ScalarMatrix& a, std::size_t dst, std::size_t src, const Scalar& f) {
  for (std::size_t r = 0; r < a.rows(); ++r)
    if (!a(r, src).is_zero()) a(r, dst) += f * a(r, src);
}

void scale_row(ScalarMatrix& a, std::size_t i, const Scalar& f) {
  for (std::size_t c = 0; c < a.cols(); ++c) a(i, c) *= f;
}

void scale_col(ScalarMatrix& a, std::size_t i, const Scalar& f) {
  for (std::size_t r = 0; r < a.rows(); ++r) a(r, i) *= f;
}

// Simultaneous congruence moves on (a = g M g^T, g).
struct Congruence {
  ScalarMatrix a;
  ScalarMatrix g;

  void swap(std::size_t i, std::size_t j) {
    swap_rows(a, i, j);
    swap_cols(a, i, j);
    swap_rows(g, i, j);
  }
  void add(std::size_t dst, std::size_t src, const Scalar& f) {
    add_row(a, dst, src, f);
    add_col(a, dst, src, f);
    add_row(g, dst, src, f);
  }
  void scale(std::size_t i, const Scalar& f) {
    scale_row(a, i, f);
    scale_col(a, i, f);
    scale_row(g, i, f);
  }
};

std::size_t block_rank(const ScalarMatrix& m, std::size_t size) { return rank(m.block(0, 0, size, size)); }

}  // namespace

SymmetricCanonical symmetric_canonical(const ScalarMatrix& m) {
  if (!is_symmetric(m)) throw Error(ErrorCode::HypothesisViolation, "symmetric_canonical: matrix is not symmetric");
  const Field& f = m.field();
  const std::size_t n = m.rows();
  Congruence c{m, ScalarMatrix::identity(f, n)};
  std::size_t k = 0;
  for (; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && c.a(piv, piv).is_zero()) ++piv;
    if (piv == n) {
      // No diagonal pivot left: A_ii + 2 A_ij + A_jj = 2 A_ij after adding j to i.
      std::size_t pi = n, pj = n;
      for (std::size_t i = k; i < n && pi == n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          if (!c.a(i, j).is_zero()) {
            pi = i;
            pj = j;
            break;
          }
      if (pi == n) break;
      c.add(pi, pj, f.one());
      piv = pi;
    }
    c.swap(k, piv);
    const Scalar inv = c.a(k, k).inverse();
    for (std::size_t j = k + 1; j < n; ++j)
      if (!c.a(j, k).is_zero()) c.add(j, k, -(c.a(j, k) * inv));
  }

  SymmetricCanonical out;
  out.rank = k;
  out.normalized = f.is_tower();
  for (std::size_t i = 0; i < k; ++i) {
    const Scalar d = c.a(i, i);
    if (f.is_tower()) {
      scale_row(c.g, i, sqrt(d).inverse());
      out.diagonal.push_back(f.one());
    } else {
      out.diagonal.push_back(d);
      out.square.push_back(is_square(d));
      out.sign.push_back(sgn(d.rational()));
    }
  }
  out.g = std::move(c.g);
  return out;
}

SkewCanonical skew_canonical(const ScalarMatrix& m) {
  if (!is_skew(m)) throw Error(ErrorCode::HypothesisViolation, "skew_canonical: matrix is not skew-symmetric");
  const Field& f = m.field();
  const std::size_t n = m.rows();
  Congruence c{m, ScalarMatrix::identity(f, n)};
  std::size_t k = 0;
  while (k + 1 < n) {
    std::size_t pi = n, pj = n;
    for (std::size_t i = k; i < n && pi == n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (!c.a(i, j).is_zero()) {
          pi = i;
          pj = j;
          break;
        }
    if (pi == n) break;
    c.swap(k, pi);
    if (pj == k) pj = pi;
    c.swap(k + 1, pj);
    c.scale(k, c.a(k, k + 1).inverse());
    for (std::size_t i = k + 2; i < n; ++i) {
      // Clear A[i][k] and A[i][k+1] using rows k (0, 1, ..) and k+1 (-1, 0, ..).
      const Scalar alpha = -c.a(i, k + 1);
      const Scalar beta = c.a(i, k);
      if (!alpha.is_zero()) c.add(i, k, alpha);
      if (!beta.is_zero()) c.add(i, k + 1, beta);
    }
    k += 2;
  }
  return {std::move(c.g), k};
}

ScalarMatrix canonical_matrix(const Field& f, SymKind kind, std::size_t n, std::size_t r) {
  ScalarMatrix out(f, n, n);
  if (kind == SymKind::Skew) {
    for (std::size_t i = 0; i + 1 < r; i += 2) {
      out(i, i + 1) = f.one();
      out(i + 1, i) = -f.one();
    }
  } else {
    for (std::size_t i = 0; i < r; ++i) out(i, i) = f.one();
  }
  return out;
}

ScalarMatrix rank_r_zero_corner_witness(const Field& f, SymKind kind, std::size_t size, std::size_t corner,
                                        std::size_t r) {
  if (kind == SymKind::General) throw Error(ErrorCode::InvalidArgument, "zero-corner witness needs a symmetric or skew kind");
  if (2 * corner > size || r > size || (kind == SymKind::Skew && r % 2 != 0))
    throw Error(ErrorCode::InvalidArgument, "no " + std::string(to_string(kind)) + " matrix of size " +
                                                std::to_string(size) + " and rank " + std::to_string(r) +
                                                " with a zero " + std::to_string(corner) + " corner is constructed");
  ScalarMatrix out(f, size, size);
  const std::size_t pairs = std::min(r / 2, corner);
  const Scalar eps = kind == SymKind::Skew ? -f.one() : f.one();
  for (std::size_t i = 0; i < pairs; ++i) {
    out(i, corner + i) = f.one();
    out(corner + i, i) = eps;
  }
  std::size_t next = corner + pairs;
  if (kind == SymKind::Symmetric) {
    for (std::size_t d = 0; d < r - 2 * pairs; ++d, ++next) out(next, next) = f.one();
  } else {
    if (pairs == corner) next = 2 * corner;
    for (std::size_t e = pairs; e < r / 2; ++e, next += 2) {
      out(next, next + 1) = f.one();
      out(next + 1, next) = -f.one();
    }
  }
  return out;
}

ScalarMatrix congruence_transport(SymKind kind, const ScalarMatrix& a, const ScalarMatrix& b) {
  if (!a.square() || a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(ErrorCode::ShapeMismatch, "congruence_transport: shapes differ");
  if (kind == SymKind::Skew) {
    const auto ca = skew_canonical(a), cb = skew_canonical(b);
    if (ca.rank != cb.rank) throw Error(ErrorCode::HypothesisViolation, "congruence_transport: ranks differ");
    return inverse(cb.g) * ca.g;
  }
  if (kind != SymKind::Symmetric) throw Error(ErrorCode::InvalidArgument, "congruence_transport needs a symmetric or skew kind");
  auto ca = symmetric_canonical(a);
  const auto cb = symmetric_canonical(b);
  if (ca.rank != cb.rank) throw Error(ErrorCode::HypothesisViolation, "congruence_transport: ranks differ");
  if (!ca.normalized) {
    for (std::size_t i = 0; i < ca.rank; ++i) {
      const Scalar ratio = cb.diagonal[i] / ca.diagonal[i];
      if (!is_square(ratio))
        throw Error(ErrorCode::NoSquareRoot, "congruence_transport: diagonal entries " + ca.diagonal[i].to_string() +
                                                 " and " + cb.diagonal[i].to_string() +
                                                 " differ by a non-square over Q");
      scale_row(ca.g, i, sqrt(ratio));
    }
  }
  return inverse(cb.g) * ca.g;
}

std::vector<std::string> pattern_violations(const BlockPattern& pat, const MatrixTuple& t) {
  std::vector<std::string> out;
  const std::size_t s = pat.s, l = pat.l, n = pat.n;
  if (t.size() != s || t.rows != n || t.cols != n || (s + 1) * l > n) {
    out.push_back("tuple shape does not fit the pattern");
    return out;
  }
  const Field& f = t.field;
  auto expect = [&](std::size_t comp, std::size_t i, std::size_t j, const Scalar& want, const char* what) {
    if (!(t.mats[comp](i, j) == want))
      out.push_back("component " + std::to_string(comp) + " entry (" + std::to_string(i) + "," + std::to_string(j) +
                    ") is " + t.mats[comp](i, j).to_string() + ", expected " + want.to_string() + " (" + what + ")");
  };
  for (std::size_t c = 0; c < s; ++c) {
    const Scalar eps = pat.kinds.size() > c && pat.kinds[c] == SymKind::Skew ? -f.one() : f.one();
    for (std::size_t a = 0; a < l; ++a) {
      for (std::size_t b = 0; b < l; ++b) expect(c, a, b, f.zero(), "leading corner");
      for (std::size_t row = l; row < n; ++row) {
        const std::size_t blk = row / l;  // 1-based block index of the row among the first (s+1)l
        Scalar want = f.zero();
        if (row < (s + 1) * l && blk == c + 1 && row % l == a) want = f.one();
        expect(c, row, a, want, "first columns");
        expect(c, a, row, eps * want, "first rows");
      }
    }
    if (pat.strengthened)
      for (std::size_t i = l; i < (s + 1) * l; ++i)
        for (std::size_t j = l; j < (s + 1) * l; ++j) expect(c, i, j, f.zero(), "middle blocks");
  }
  return out;
}

BlockNormalForm block_normal_form(const MatrixTuple& t, const ScalarMatrix& v, std::size_t l) {
  t.validate();
  const std::size_t s = t.size(), n = t.rows;
  const std::size_t dim = (std::size_t{1} << s) * l;
  if (v.rows() != n || v.cols() != dim)
    throw Error(ErrorCode::ShapeMismatch, "block_normal_form: V must be N x 2^s l");
  if ((s + 1) * l > n) throw Error(ErrorCode::HypothesisViolation, "block_normal_form: N is smaller than (s+1) l");
  for (auto k : t.kinds)
    if (k == SymKind::General) throw Error(ErrorCode::InvalidArgument, "block_normal_form needs symmetric or skew components");
  if (image_rank(t, v) != s * dim)
    throw Error(ErrorCode::HypothesisViolation, "block_normal_form: dim(M V) is not s 2^s l");

  const Field& f = t.field;
  BlockNormalForm out;
  out.pattern = BlockPattern{s, l, n, t.kinds, false};

  // Stage 1: g^T maps the leading coordinates onto V.
  ScalarMatrix g;
  try {
    g = basis_completion(v, n).transpose();
  } catch (const Error& e) {
    throw Error(ErrorCode::HypothesisViolation, std::string("block_normal_form: V is degenerate: ") + e.what());
  }
  MatrixTuple cur = congruence_apply(g, t);
  auto leading = [&](const MatrixTuple& u, std::size_t k) {
    ScalarMatrix e(f, n, k);
    for (std::size_t i = 0; i < k; ++i) e(i, i) = f.one();
    return image_rank(u, e);
  };
  if (leading(cur, dim) != s * dim)
    throw Error(ErrorCode::VerificationFailed, "block_normal_form: stage 1 lost the image rank");

  // Stage 2: zero the leading 2^(k-1) l corner of component k, last first.
  for (std::size_t comp = s; comp >= 1; --comp) {
    const std::size_t size = (std::size_t{1} << comp) * l;
    const ScalarMatrix lead = cur.mats[comp - 1].block(0, 0, size, size);
    const ScalarMatrix target = rank_r_zero_corner_witness(f, cur.kinds[comp - 1], size, size / 2, rank(lead));
    const ScalarMatrix h = congruence_transport(cur.kinds[comp - 1], lead, target);
    ScalarMatrix embed = ScalarMatrix::identity(f, n);
    embed.set_block(0, 0, h);
    g = embed * g;
    cur = congruence_apply(embed, cur);
    if (!cur.mats[comp - 1].block(0, 0, size / 2, size / 2).is_zero() || block_rank(cur.mats[comp - 1], size) != rank(lead))
      throw Error(ErrorCode::VerificationFailed, "block_normal_form: corner of component " + std::to_string(comp) +
                                                     " was not zeroed");
  }
  if (s > 0 && leading(cur, l) != s * l)
    throw Error(ErrorCode::VerificationFailed, "block_normal_form: first columns are no longer independent");

  // Stage 3: row operations below the first l rows turn the stacked first
  // columns into [Id_sl; 0].
  if (s > 0) {
    ScalarMatrix c(f, n - l, 0);
    for (const auto& m : cur.mats) c = hstack(c, m.block(l, 0, n - l, l));
    const ScalarMatrix h = inverse(basis_completion(c, n - l));
    ScalarMatrix embed = ScalarMatrix::identity(f, n);
    embed.set_block(l, l, h);
    g = embed * g;
    cur = congruence_apply(embed, cur);
  }

  const auto bad = pattern_violations(out.pattern, cur);
  if (!bad.empty()) throw Error(ErrorCode::VerificationFailed, "block_normal_form: " + bad.front());
  out.g = std::move(g);
  out.transformed = std::move(cur);
  return out;
}

LaurentMatrix diagonal_curve(const Field& f, const std::vector<int>& exponents) {
  LaurentMatrix out(f, exponents.size(), exponents.size());
  for (std::size_t i = 0; i < exponents.size(); ++i) out(i, i) = Laurent::monomial(f.one(), exponents[i]);
  return out;
}

LaurentMatrix closure_scaling_curve(const Field& f, std::size_t l, std::size_t n) {
  if (l > n) throw Error(ErrorCode::InvalidArgument, "closure_scaling_curve: l exceeds N");
  std::vector<int> e(n, 1);
  std::fill(e.begin(), e.begin() + static_cast<std::ptrdiff_t>(l), -1);
  return diagonal_curve(f, e);
}

}  // namespace congruence
