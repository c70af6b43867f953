#include <gtest/gtest.h>

#include "congruence/fixtures.hpp"
#include "congruence/free_subspace.hpp"
#include "congruence/normal_form.hpp"

using namespace congruence;

namespace {

ScalarMatrix from_ints(const Field& f, const std::vector<std::vector<int>>& rows) {
  ScalarMatrix m(f, rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = f.from_int(rows[i][j]);
  return m;
}

/// Hand-built canonical forms, independent of canonical_matrix.
ScalarMatrix expected_symmetric(const Field& f, std::size_t n, std::size_t r) {
  ScalarMatrix m(f, n, n);
  for (std::size_t i = 0; i < r; ++i) m(i, i) = f.one();
  return m;
}

ScalarMatrix expected_skew(const Field& f, std::size_t n, std::size_t r) {
  ScalarMatrix m(f, n, n);
  for (std::size_t i = 0; i < r; i += 2) {
    m(i, i + 1) = f.one();
    m(i + 1, i) = -f.one();
  }
  return m;
}

}  // namespace

TEST(SymmetricCanonical, ZeroMatrix) {
  const Field f = Field::tower(5);
  const auto c = symmetric_canonical(ScalarMatrix(f, 3, 3));
  EXPECT_EQ(c.rank, 0u);
  EXPECT_EQ(c.g, ScalarMatrix::identity(f, 3));
}

TEST(SymmetricCanonical, HyperbolicPlaneBecomesIdentity) {
  const Field f = Field::tower(5);
  const ScalarMatrix m = from_ints(f, {{0, 1}, {1, 0}});
  const auto c = symmetric_canonical(m);
  EXPECT_EQ(c.rank, 2u);
  EXPECT_EQ(congruence_apply(c.g, m), ScalarMatrix::identity(f, 2));
}

TEST(SymmetricCanonical, NonResidueNeedsTheFirstExtension) {
  const Field f = Field::tower(5);
  const ScalarMatrix m = from_ints(f, {{2}});
  const auto c = symmetric_canonical(m);
  EXPECT_EQ(c.g(0, 0).level(), 1);
  EXPECT_EQ(c.g(0, 0) * c.g(0, 0) * f.from_int(2), f.one());
  EXPECT_EQ(congruence_apply(c.g, m), ScalarMatrix::identity(f, 1));
}

TEST(SymmetricCanonical, RationalModeReportsSquareClasses) {
  const Field q = Field::rational();
  const ScalarMatrix m = from_ints(q, {{4, 0, 0}, {0, -2, 0}, {0, 0, 0}});
  const auto c = symmetric_canonical(m);
  EXPECT_FALSE(c.normalized);
  EXPECT_EQ(c.rank, 2u);
  const ScalarMatrix d = congruence_apply(c.g, m);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      if (i != j || i >= 2) { EXPECT_TRUE(d(i, j).is_zero()); }
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_EQ(d(i, i), c.diagonal[i]);
    EXPECT_EQ(c.square[i], is_square(c.diagonal[i]));
    EXPECT_EQ(c.sign[i], sgn(c.diagonal[i].rational()));
  }
}

TEST(SkewCanonical, AlreadyCanonical) {
  const Field f = Field::tower(5);
  const auto c = skew_canonical(from_ints(f, {{0, 1}, {-1, 0}}));
  EXPECT_EQ(c.rank, 2u);
  EXPECT_EQ(c.g, ScalarMatrix::identity(f, 2));
}

TEST(SkewCanonical, RationalScaling) {
  const Field q = Field::rational();
  const auto c = skew_canonical(from_ints(q, {{0, 2}, {-2, 0}}));
  EXPECT_EQ(c.rank, 2u);
  ScalarMatrix want = ScalarMatrix::identity(q, 2);
  want(0, 0) = q.from_rational(mpq_class(1, 2));
  EXPECT_EQ(c.g, want);
}

TEST(SkewCanonical, ZeroMatrix) {
  const Field f = Field::tower(3);
  const auto c = skew_canonical(ScalarMatrix(f, 4, 4));
  EXPECT_EQ(c.rank, 0u);
  EXPECT_EQ(c.g, ScalarMatrix::identity(f, 4));
}

TEST(ZeroCornerWitness, SymmetricSinglePair) {
  const Field f = Field::tower(5);
  const ScalarMatrix m = rank_r_zero_corner_witness(f, SymKind::Symmetric, 4, 2, 2);
  ScalarMatrix want(f, 4, 4);
  want(0, 2) = want(2, 0) = f.one();
  EXPECT_EQ(m, want);
  EXPECT_EQ(rank(m), 2u);
}

TEST(ZeroCornerWitness, SkewPair) {
  const Field f = Field::tower(5);
  EXPECT_EQ(rank_r_zero_corner_witness(f, SymKind::Skew, 2, 1, 2), from_ints(f, {{0, 1}, {-1, 0}}));
}

TEST(ZeroCornerWitness, SymmetricDiagonalOutsideCorner) {
  const Field f = Field::tower(5);
  EXPECT_EQ(rank_r_zero_corner_witness(f, SymKind::Symmetric, 2, 1, 1), from_ints(f, {{0, 0}, {0, 1}}));
}

TEST(ZeroCornerWitness, AllFeasibleParameters) {
  const Field f = Field::tower(7);
  for (std::size_t size = 1; size <= 8; ++size)
    for (std::size_t corner = 0; corner <= size / 2; ++corner)
      for (std::size_t r = 0; r <= size; ++r)
        for (SymKind kind : {SymKind::Symmetric, SymKind::Skew}) {
          if (kind == SymKind::Skew && r % 2) continue;
          if (r > 2 * (size - corner)) continue;
          const ScalarMatrix m = rank_r_zero_corner_witness(f, kind, size, corner, r);
          ASSERT_TRUE(satisfies(m, kind));
          ASSERT_EQ(rank(m), r);
          ASSERT_TRUE(m.block(0, 0, corner, corner).is_zero());
        }
}

TEST(ZeroCornerWitness, InfeasibleParameters) {
  const Field f = Field::tower(7);
  EXPECT_THROW(rank_r_zero_corner_witness(f, SymKind::Skew, 4, 1, 3), Error);
  EXPECT_THROW(rank_r_zero_corner_witness(f, SymKind::Symmetric, 4, 3, 2), Error);
  EXPECT_THROW(rank_r_zero_corner_witness(f, SymKind::Symmetric, 4, 1, 5), Error);
}

TEST(CongruenceTransport, RationalSquareClassMismatch) {
  const Field q = Field::rational();
  try {
    congruence_transport(SymKind::Symmetric, from_ints(q, {{1}}), from_ints(q, {{2}}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NoSquareRoot);
  }
  const ScalarMatrix g = congruence_transport(SymKind::Symmetric, from_ints(q, {{1}}), from_ints(q, {{9}}));
  EXPECT_EQ(congruence_apply(g, from_ints(q, {{1}})), from_ints(q, {{9}}));
}

TEST(CongruenceTransport, TowerBothKinds) {
  const Field f = Field::tower(5);
  Rng rng(1);
  for (int it = 0; it < 40; ++it) {
    const std::size_t n = 2 + rng.below(5);
    const SymKind kind = it % 2 ? SymKind::Skew : SymKind::Symmetric;
    const std::size_t r = kind == SymKind::Skew ? 2 * rng.below(n / 2 + 1) : rng.below(n + 1);
    const ScalarMatrix a = kind == SymKind::Skew ? fixtures::random_skew(f, n, r, rng) : fixtures::random_symmetric(f, n, r, rng);
    const ScalarMatrix b = kind == SymKind::Skew ? fixtures::random_skew(f, n, r, rng) : fixtures::random_symmetric(f, n, r, rng);
    ASSERT_EQ(congruence_apply(congruence_transport(kind, a, b), a), b);
  }
}

TEST(BlockNormalForm, HyperbolicPlaneAlreadyInForm) {
  const Field f = Field::tower(5);
  MatrixTuple t(f, 2, 2);
  t.push(from_ints(f, {{0, 1}, {1, 0}}), SymKind::Symmetric);
  const auto bnf = block_normal_form(t, ScalarMatrix::identity(f, 2), 1);
  EXPECT_TRUE(pattern_violations(bnf.pattern, bnf.transformed).empty());
  EXPECT_TRUE(pattern_violations(BlockPattern{1, 1, 2, {SymKind::Symmetric}, false}, t).empty());
}

TEST(BlockNormalForm, IdentityPlane) {
  const Field f = Field::tower(5);
  MatrixTuple t(f, 2, 2);
  t.push(ScalarMatrix::identity(f, 2), SymKind::Symmetric);
  const auto bnf = block_normal_form(t, ScalarMatrix::identity(f, 2), 1);
  const MatrixTuple again = congruence_apply(bnf.g, t);
  EXPECT_TRUE(pattern_violations(bnf.pattern, again).empty());
  EXPECT_EQ(again.mats[0](0, 0), f.zero());
  EXPECT_EQ(again.mats[0](1, 0), f.one());
}

TEST(BlockNormalForm, MixedKindsPlanted) {
  const Field f = Field::tower(5);
  for (uint64_t seed = 0; seed < 10; ++seed) {
    Rng rng(seed);
    const auto planted = fixtures::planted_free_subspace(f, {SymKind::Symmetric, SymKind::Skew}, 1, 0, rng);
    ASSERT_EQ(planted.tuple.rows, 12u);
    const auto bnf = block_normal_form(planted.tuple, planted.basis, 1);
    const auto violations = pattern_violations(bnf.pattern, congruence_apply(bnf.g, planted.tuple));
    ASSERT_TRUE(violations.empty()) << violations.front();
  }
}

TEST(BlockNormalForm, RejectsNonFreeSubspace) {
  const Field f = Field::tower(5);
  MatrixTuple t(f, 4, 4);
  t.push(expected_symmetric(f, 4, 1), SymKind::Symmetric);
  try {
    ScalarMatrix v(f, 4, 2);
    v(0, 0) = v(1, 1) = f.one();
    block_normal_form(t, v, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::HypothesisViolation);
  }
}

TEST(BlockPattern, DetectsTamperedEntries) {
  const Field f = Field::tower(5);
  Rng rng(3);
  const auto planted = fixtures::planted_free_subspace(f, {SymKind::Symmetric}, 1, 1, rng);
  const auto bnf = block_normal_form(planted.tuple, planted.basis, 1);
  MatrixTuple t = bnf.transformed;
  t.mats[0](0, 0) = f.one();
  EXPECT_EQ(pattern_violations(bnf.pattern, t).size(), 1u);
  t = bnf.transformed;
  t.mats[0](2, 0) = t.mats[0](0, 2) = f.one();
  EXPECT_EQ(pattern_violations(bnf.pattern, t).size(), 2u);
}

TEST(ClosureCurve, KillsTrailingBlock) {
  const Field f = Field::tower(7);
  const Scalar b = f.from_int(3), d = f.from_int(5);
  ScalarMatrix m(f, 2, 2);
  m(0, 1) = m(1, 0) = b;
  m(1, 1) = d;
  const LaurentMatrix g = closure_scaling_curve(f, 1, 2);
  const LaurentMatrix moved = congruence_apply(g, to_laurent(m));
  EXPECT_TRUE(moved(0, 0).is_zero());
  EXPECT_EQ(moved(0, 1), Laurent::constant(b));
  EXPECT_EQ(moved(1, 1), Laurent::monomial(d, 2));
  ScalarMatrix limit = m;
  limit(1, 1) = f.zero();
  EXPECT_EQ(eval_at_zero(moved), limit);
}

TEST(ClosureCurve, FullScalingDivergesUnlessZero) {
  const Field f = Field::tower(7);
  const LaurentMatrix g = closure_scaling_curve(f, 2, 2);
  try {
    eval_at_zero(congruence_apply(g, to_laurent(ScalarMatrix::identity(f, 2))));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NegativeDegree);
  }
  EXPECT_TRUE(eval_at_zero(congruence_apply(g, to_laurent(ScalarMatrix(f, 2, 2)))).is_zero());
}

TEST(ClosureCurve, FixedWhenTrailingBlockVanishes) {
  const Field f = Field::tower(7);
  Rng rng(4);
  for (int it = 0; it < 20; ++it) {
    const std::size_t n = 2 + rng.below(4), l = 1 + rng.below(n / 2);
    ScalarMatrix m = fixtures::random_of_kind(f, SymKind::Symmetric, n, rng);
    m.set_block(0, 0, ScalarMatrix(f, l, l));
    m.set_block(l, l, ScalarMatrix(f, n - l, n - l));
    EXPECT_EQ(eval_at_zero(congruence_apply(closure_scaling_curve(f, l, n), to_laurent(m))), m);
  }
}

TEST(NormalFormProperty, CanonicalFormsReproduceExactly) {
  const Field f = Field::tower(5);
  Rng rng(5);
  for (int it = 0; it < 100; ++it) {
    const std::size_t n = 1 + rng.below(10);
    const ScalarMatrix s = fixtures::random_symmetric(f, n, rng.below(n + 1), rng);
    const auto sc = symmetric_canonical(s);
    ASSERT_EQ(sc.rank, rank(s));
    ASSERT_EQ(congruence_apply(sc.g, s), expected_symmetric(f, n, sc.rank));
    ASSERT_EQ(canonical_matrix(f, SymKind::Symmetric, n, sc.rank), expected_symmetric(f, n, sc.rank));

    const ScalarMatrix a = fixtures::random_of_kind(f, SymKind::Skew, n, rng);
    const auto kc = skew_canonical(a);
    ASSERT_EQ(kc.rank % 2, 0u);
    ASSERT_EQ(kc.rank, rank(a));
    ASSERT_EQ(congruence_apply(kc.g, a), expected_skew(f, n, kc.rank));
  }
}

TEST(NormalFormProperty, CongruencePreservesKinds) {
  const Field f = Field::tower(3);
  Rng rng(6);
  for (int it = 0; it < 100; ++it) {
    const std::size_t n = 1 + rng.below(6);
    const ScalarMatrix g = fixtures::random_matrix(f, n, n, rng);
    ASSERT_TRUE(is_symmetric(congruence_apply(g, fixtures::random_of_kind(f, SymKind::Symmetric, n, rng))));
    ASSERT_TRUE(is_skew(congruence_apply(g, fixtures::random_of_kind(f, SymKind::Skew, n, rng))));
  }
}

TEST(NormalFormProperty, StackedCurvesHaveBoundedDegree) {
  const Field f = Field::tower(5);
  Rng rng(7);
  for (int it = 0; it < 20; ++it) {
    const std::size_t n = 3 + rng.below(4), l = 1;
    const ScalarMatrix m = fixtures::random_of_kind(f, SymKind::Symmetric, n, rng);
    LaurentMatrix acc = to_laurent(m);
    const std::size_t stacked = 1 + rng.below(3);
    for (std::size_t k = 0; k < stacked; ++k) acc = congruence_apply(closure_scaling_curve(f, l, n), acc);
    const auto lo = min_degree(acc);
    ASSERT_TRUE(lo.has_value());
    ASSERT_GE(*lo, -2 * static_cast<int>(stacked));
  }
}
