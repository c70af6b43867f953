#include <gtest/gtest.h>

#include "congruence/fixtures.hpp"
#include "congruence/laurent.hpp"

using namespace congruence;

namespace {

Laurent poly(const Field& f, std::initializer_list<std::pair<int, int>> terms) {
  Laurent out(f);
  for (auto [d, c] : terms) out += Laurent::monomial(f.from_int(c), d);
  return out;
}

Laurent random_laurent(const Field& f, Rng& rng, int lo, int hi) {
  Laurent out(f);
  const int terms = static_cast<int>(rng.below(4));
  for (int i = 0; i < terms; ++i)
    out += Laurent::monomial(fixtures::random_scalar(f, rng), static_cast<int>(rng.between(lo, hi)));
  return out;
}

}  // namespace

TEST(Laurent, InverseMonomialsCancel) {
  const Field f = Field::tower(5);
  EXPECT_EQ(poly(f, {{-1, 1}}) * poly(f, {{1, 1}}), poly(f, {{0, 1}}));
}

TEST(Laurent, DifferenceOfSquares) {
  const Field f = Field::rational();
  EXPECT_EQ(poly(f, {{0, 1}, {1, 1}}) * poly(f, {{0, 1}, {1, -1}}), poly(f, {{0, 1}, {2, -1}}));
}

TEST(Laurent, CoefficientwiseSumModFive) {
  const Field f = Field::tower(5);
  EXPECT_TRUE((poly(f, {{0, 2}, {2, 3}}) + poly(f, {{0, 3}, {2, 2}})).is_zero());
}

TEST(Laurent, EvalAtZero) {
  const Field f = Field::tower(5);
  EXPECT_EQ(poly(f, {{0, 2}, {2, 3}}).eval_at_zero(), f.from_int(2));
  EXPECT_TRUE(Laurent(f).eval_at_zero().is_zero());
  try {
    poly(f, {{-1, 1}}).eval_at_zero();
    FAIL() << "expected NegativeDegree";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NegativeDegree);
  }
}

TEST(Laurent, Units) {
  const Field f = Field::tower(5);
  const auto u = poly(f, {{-2, 3}}).unit();
  ASSERT_TRUE(u.has_value());
  EXPECT_EQ(u->coeff, f.from_int(3));
  EXPECT_EQ(u->degree, -2);
  EXPECT_FALSE(poly(f, {{0, 1}, {1, 1}}).is_unit());
  EXPECT_FALSE(Laurent(f).is_unit());
}

TEST(Laurent, TermsStaySortedAndNonzero) {
  const Field f = Field::tower(7);
  const Laurent a = poly(f, {{3, 1}, {-2, 4}, {0, 0}, {1, 6}});
  ASSERT_EQ(a.terms().size(), 3u);
  for (std::size_t i = 0; i + 1 < a.terms().size(); ++i) EXPECT_LT(a.terms()[i].first, a.terms()[i + 1].first);
  EXPECT_EQ(a.min_degree(), -2);
  EXPECT_EQ(a.max_degree(), 3);
}

TEST(LaurentProperty, EvalAtZeroIsMultiplicative) {
  for (const Field& f : {Field::tower(5), Field::rational()}) {
    Rng rng(11);
    for (int it = 0; it < 300; ++it) {
      const Laurent a = random_laurent(f, rng, 0, 4), b = random_laurent(f, rng, 0, 4);
      ASSERT_EQ((a * b).eval_at_zero(), a.eval_at_zero() * b.eval_at_zero());
    }
  }
}

TEST(LaurentProperty, ProductIsUnitIffFactorsAre) {
  const Field f = Field::tower(5);
  Rng rng(12);
  for (int it = 0; it < 300; ++it) {
    const Laurent a = random_laurent(f, rng, -3, 3), b = random_laurent(f, rng, -3, 3);
    if (a.is_zero() || b.is_zero()) continue;
    ASSERT_EQ((a * b).is_unit(), a.is_unit() && b.is_unit());
  }
}

TEST(LaurentProperty, RingLaws) {
  const Field f = Field::tower(3);
  Rng rng(13);
  for (int it = 0; it < 300; ++it) {
    const Laurent a = random_laurent(f, rng, -3, 3), b = random_laurent(f, rng, -3, 3),
                  c = random_laurent(f, rng, -3, 3);
    ASSERT_EQ(a * (b + c), a * b + a * c);
    ASSERT_EQ((a * b) * c, a * (b * c));
    ASSERT_TRUE((a - a).is_zero());
  }
}

TEST(LaurentProperty, EvaluateIsARingMap) {
  const Field f = Field::tower(7);
  Rng rng(14);
  for (int it = 0; it < 200; ++it) {
    const Laurent a = random_laurent(f, rng, -3, 3), b = random_laurent(f, rng, -3, 3);
    const Scalar t = fixtures::random_nonzero(f, rng);
    ASSERT_EQ((a * b).evaluate(t), a.evaluate(t) * b.evaluate(t));
    ASSERT_EQ((a + b).evaluate(t), a.evaluate(t) + b.evaluate(t));
  }
}
