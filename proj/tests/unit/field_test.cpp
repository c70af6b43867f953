#include <gtest/gtest.h>

#include "congruence/field.hpp"
#include "congruence/fixtures.hpp"

using namespace congruence;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorCode::InvalidArgument;
}

Scalar random_at_level(const Field& f, Rng& rng, int max_level) {
  return fixtures::random_scalar(f, rng, static_cast<int>(rng.below(max_level + 1)));
}

}  // namespace

TEST(Field, RejectsCharacteristicTwoAndComposites) {
  EXPECT_EQ(code_of([] { Field::tower(2); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { Field::tower(9); }), ErrorCode::InvalidArgument);
  EXPECT_NO_THROW(Field::tower(3));
}

TEST(Field, SqrtOfFourIsTwo) {
  const Field f = Field::tower(5);
  EXPECT_EQ(sqrt(f.from_int(4)), f.from_int(2));
}

TEST(Field, SqrtOfZeroIsZero) {
  const Field f = Field::tower(5);
  EXPECT_TRUE(sqrt(f.zero()).is_zero());
  EXPECT_TRUE(sqrt(Field::rational().zero()).is_zero());
}

TEST(Field, SqrtOfThreeNeedsTheFirstExtension) {
  const Field f = Field::tower(5);
  const Scalar three = f.from_int(3);
  EXPECT_FALSE(is_square(three));
  const Scalar r = sqrt(three);
  EXPECT_EQ(r.level(), 1);
  EXPECT_EQ(r * r, three);
}

TEST(Field, SquaresModFiveAreZeroOneFour) {
  const Field f = Field::tower(5);
  for (int a = 0; a < 5; ++a) EXPECT_EQ(is_square(f.from_int(a)), a == 0 || a == 1 || a == 4) << a;
}

TEST(Field, SampleUsesSmallestLevelOfSufficientSize) {
  const Field f = Field::tower(5);
  Rng rng(1);
  EXPECT_EQ(f.sample(rng, 4).level(), 0);
  EXPECT_EQ(f.level_for_size(26), 2);
  EXPECT_LE(f.sample(rng, 26).level(), 2);
  EXPECT_EQ(f.level_size(2), 625u);
}

TEST(Field, SampleIsDeterministicForASeed) {
  const Field f = Field::tower(7);
  Rng a(42), b(42);
  for (int i = 0; i < 50; ++i) EXPECT_EQ(f.sample(a, 100), f.sample(b, 100));
}

TEST(Field, RationalSqrt) {
  const Field q = Field::rational();
  EXPECT_EQ(sqrt(q.from_rational(mpq_class(4, 9))), q.from_rational(mpq_class(2, 3)));
  EXPECT_EQ(code_of([&] { sqrt(q.from_int(2)); }), ErrorCode::NoSquareRoot);
  EXPECT_EQ(code_of([&] { sqrt(q.from_int(-4)); }), ErrorCode::NoSquareRoot);
}

TEST(Field, MixingFieldsIsAnError) {
  const Field a = Field::tower(5), b = Field::tower(5);
  EXPECT_EQ(code_of([&] { (void)(a.one() + b.one()); }), ErrorCode::MixedFields);
  EXPECT_EQ(code_of([&] { (void)(a.one() * Field::rational().one()); }), ErrorCode::MixedFields);
}

TEST(Field, InverseOfZeroFails) {
  const Field f = Field::tower(5);
  EXPECT_EQ(code_of([&] { f.zero().inverse(); }), ErrorCode::DivisionByZero);
  EXPECT_EQ(code_of([&] { (void)(f.one() / f.zero()); }), ErrorCode::DivisionByZero);
}

TEST(FieldProperty, RingAndFieldLaws) {
  for (uint32_t p : {3u, 5u, 7u, 65521u}) {
    const Field f = Field::tower(p);
    f.ensure_level(2);
    Rng rng(p);
    for (int it = 0; it < 300; ++it) {
      const Scalar a = random_at_level(f, rng, 2), b = random_at_level(f, rng, 2), c = random_at_level(f, rng, 2);
      ASSERT_EQ((a + b) + c, a + (b + c));
      ASSERT_EQ((a * b) * c, a * (b * c));
      ASSERT_EQ(a * (b + c), a * b + a * c);
      ASSERT_EQ(a + b, b + a);
      ASSERT_EQ(a * b, b * a);
      ASSERT_EQ(a - a, f.zero());
      ASSERT_EQ(a * f.one(), a);
      if (!a.is_zero()) {
        ASSERT_EQ(a * a.inverse(), f.one());
        ASSERT_EQ(b / a * a, b);
      }
    }
  }
}

TEST(FieldProperty, RationalLaws) {
  const Field q = Field::rational();
  Rng rng(9);
  for (int it = 0; it < 200; ++it) {
    const Scalar a = q.from_rational(mpq_class(rng.between(-20, 20), rng.between(1, 9)));
    const Scalar b = q.from_rational(mpq_class(rng.between(-20, 20), rng.between(1, 9)));
    ASSERT_EQ(a * (a + b), a * a + a * b);
    if (!a.is_zero()) { ASSERT_EQ(a * a.inverse(), q.one()); }
  }
}

TEST(FieldProperty, SqrtSquaresBack) {
  const Field f = Field::tower(5);
  Rng rng(17);
  int extended = 0;
  for (int it = 0; it < 100; ++it) {
    const Scalar a = random_at_level(f, rng, 2);
    const Scalar r = sqrt(a);
    ASSERT_EQ(r * r, a) << a.to_string();
    if (r.level() > a.level()) ++extended;
  }
  EXPECT_GT(extended, 0);
}

TEST(FieldProperty, SqrtForcesExtensionsUpTheTower) {
  const Field f = Field::tower(3);
  for (int level = 0; level < 3; ++level) {
    f.ensure_level(level);
    const Scalar* nonsquare = nullptr;
    std::vector<Scalar> pool;
    for (uint64_t i = 0; i < f.level_size(level); ++i) pool.push_back(f.element(level, i));
    for (const Scalar& x : pool)
      if (x.level() == level && !is_square(x)) {
        nonsquare = &x;
        break;
      }
    ASSERT_NE(nonsquare, nullptr) << level;
    const Scalar r = sqrt(*nonsquare);
    EXPECT_EQ(r.level(), level + 1);
    EXPECT_EQ(r * r, *nonsquare);
  }
}

TEST(FieldProperty, TowerGrowthKeepsOldElements) {
  const Field f = Field::tower(7);
  Rng rng(3);
  f.ensure_level(1);
  std::vector<Scalar> before;
  std::vector<std::string> text;
  for (int i = 0; i < 40; ++i) {
    before.push_back(random_at_level(f, rng, 1));
    text.push_back(before.back().to_string());
  }
  const auto adjoined = f.adjoined();
  f.ensure_level(3);
  for (std::size_t i = 0; i < before.size(); ++i) {
    EXPECT_EQ(before[i].to_string(), text[i]);
    const auto c = before[i].coeffs();
    EXPECT_EQ(f.from_coeffs(before[i].level(), std::vector<uint32_t>(c.begin(), c.end())), before[i]);
  }
  const auto after = f.adjoined();
  for (std::size_t k = 0; k < adjoined.size(); ++k) EXPECT_EQ(after[k], adjoined[k]);
}

TEST(FieldProperty, ElementsAreKeptAtMinimalLevel) {
  const Field f = Field::tower(5);
  f.ensure_level(2);
  const Scalar t = sqrt(f.from_int(2));
  EXPECT_EQ((t * t).level(), 0);
  EXPECT_EQ((t - t).level(), 0);
}

TEST(FieldProperty, CanonicalOrderIsTotal) {
  const Field f = Field::tower(3);
  f.ensure_level(1);
  std::vector<Scalar> all;
  for (uint64_t i = 0; i < f.level_size(1); ++i) all.push_back(f.element(1, i));
  for (std::size_t i = 0; i + 1 < all.size(); ++i) EXPECT_LT(all[i], all[i + 1]);
}
