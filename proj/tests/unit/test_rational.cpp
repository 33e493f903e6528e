#include "superpos/rational.hpp"

#include <gtest/gtest.h>

#include <random>

using superpos::Integer;
using superpos::Rational;
using Big = Rational::Big;

TEST(Rational, ParseCanonicalizes) {
  EXPECT_EQ(Rational::parse("3")->str(), "3");
  EXPECT_EQ(Rational::parse("-2/4")->str(), "-1/2");
  EXPECT_EQ(Rational::parse("6/3")->str(), "2");
  EXPECT_EQ(Rational::parse("0/7")->str(), "0");
  EXPECT_EQ(Rational::parse("-0")->str(), "0");
  EXPECT_EQ(*Rational::parse("-2/4"), Rational(-1, 2));
}

TEST(Rational, ParseRejectsMalformed) {
  for (const char* bad : {"", "-", "1/", "/2", "1/0", "1/-2", "+1", "1.5", " 1", "1 ", "1e3", "a", "1/2/3", "01/0"}) {
    EXPECT_FALSE(Rational::parse(bad).has_value()) << bad;
  }
}

TEST(Rational, ParseHugeValuesPromote) {
  const auto r = Rational::parse("123456789012345678901234567890/3");
  ASSERT_TRUE(r);
  EXPECT_TRUE(r->is_big());
  EXPECT_EQ(r->str(), "41152263004115226300411522630");
  EXPECT_FALSE(Rational::parse("2/4")->is_big());
}

TEST(Rational, OverflowPromotesAndDemotes) {
  const Rational big = Rational(INT64_MAX) * Rational(INT64_MAX);
  EXPECT_TRUE(big.is_big());
  const Rational back = big / Rational(INT64_MAX);
  EXPECT_FALSE(back.is_big());
  EXPECT_EQ(back, Rational(INT64_MAX));
  EXPECT_TRUE(Rational(INT64_MIN).is_big());
  EXPECT_EQ(Rational(INT64_MIN).str(), "-9223372036854775808");
  EXPECT_EQ((Rational(INT64_MIN) + Rational(1)).is_big(), false);
}

TEST(Rational, ArithmeticBasics) {
  const Rational a(1, 3);
  const Rational b(-5, 6);
  EXPECT_EQ(a + b, Rational(-1, 2));
  EXPECT_EQ(a - b, Rational(7, 6));
  EXPECT_EQ(a * b, Rational(-5, 18));
  EXPECT_EQ(a / b, Rational(-2, 5));
  EXPECT_EQ(-b, Rational(5, 6));
  EXPECT_EQ(b.abs(), Rational(5, 6));
  EXPECT_EQ(b.sign(), -1);
  EXPECT_TRUE(Rational().is_zero());
  EXPECT_TRUE(Rational(4, 2).is_integer());
  EXPECT_THROW(a / Rational(), std::domain_error);
  EXPECT_THROW(Rational(1, 0), std::domain_error);
}

TEST(Rational, Ordering) {
  EXPECT_LT(Rational(1, 3), Rational(1, 2));
  EXPECT_GT(Rational(-1, 3), Rational(-1, 2));
  EXPECT_LT(Rational(INT64_MAX) * Rational(-3), Rational(INT64_MIN));
  EXPECT_EQ(Rational(2, 4) <=> Rational(1, 2), std::strong_ordering::equal);
}

TEST(Rational, NumeratorDenominator) {
  const Rational r(-6, 4);
  EXPECT_EQ(r.numerator(), Integer(-3));
  EXPECT_EQ(r.denominator(), Integer(2));
  EXPECT_EQ(Rational(Integer(10), Integer(-4)), Rational(-5, 2));
}

namespace {

Big random_big(std::mt19937_64& rng) {
  // mixes small values with ones near the 64-bit boundary
  auto draw = [&]() -> std::int64_t {
    switch (rng() % 4) {
      case 0: return static_cast<std::int64_t>(rng() % 21) - 10;
      case 1: return static_cast<std::int64_t>(rng() % 2001) - 1000;
      case 2: return static_cast<std::int64_t>(rng() >> 1) * ((rng() & 1) ? 1 : -1);
      default: return static_cast<std::int64_t>(rng() >> 33);
    }
  };
  std::int64_t den = draw();
  if (den == 0) den = 1;
  const std::int64_t num = draw();
  return den < 0 ? Big(-Integer(num), -Integer(den)) : Big(Integer(num), Integer(den));
}

}  // namespace

// Every operation agrees with boost::multiprecision::cpp_rational.
TEST(Rational, PropertyMatchesReferenceRationals) {
  std::mt19937_64 rng(20261015);
  for (int t = 0; t < 20000; ++t) {
    const Big x = random_big(rng);
    const Big y = random_big(rng);
    const Rational a(x);
    const Rational b(y);
    ASSERT_EQ((a + b).to_big(), x + y);
    ASSERT_EQ((a - b).to_big(), x - y);
    ASSERT_EQ((a * b).to_big(), x * y);
    if (y != 0) {
      ASSERT_EQ((a / b).to_big(), x / y);
    }
    ASSERT_EQ(a < b, x < y);
    ASSERT_EQ(a == b, x == y);
    ASSERT_EQ(Rational::parse(a.str()), a);
    // canonical: equal values have identical representations
    ASSERT_EQ(Rational((a * b).to_big()), a * b);
  }
}

TEST(Rational, PropertyChainedOperationsStayExact) {
  std::mt19937_64 rng(7);
  Rational acc(1);
  Big ref(1);
  for (int t = 0; t < 400; ++t) {
    const Rational step(static_cast<std::int64_t>(rng() % 19) - 9, 1 + static_cast<std::int64_t>(rng() % 13));
    if (step.is_zero()) continue;
    if (t % 3 == 0) {
      acc *= step;
      ref *= step.to_big();
    } else if (t % 3 == 1) {
      acc += step;
      ref += step.to_big();
    } else {
      acc /= step;
      ref /= step.to_big();
    }
    ASSERT_EQ(acc.to_big(), ref);
  }
}
