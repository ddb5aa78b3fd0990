#include <gtest/gtest.h>

#include "latticelab/errors.hpp"
#include "latticelab/laurent.hpp"
#include "latticelab/scalar.hpp"

using namespace latticelab;

TEST(Rational, NormalizesSignAndGcd) {
  Rational r(6, -4);
  EXPECT_EQ(r.num(), -3);
  EXPECT_EQ(r.den(), 2);
  EXPECT_EQ(r.to_string(), "-3/2");
  EXPECT_EQ(Rational::parse("-3/2"), r);
  EXPECT_EQ(Rational::parse("7"), Rational(7));
}

TEST(Rational, FieldArithmetic) {
  Rational a(1, 3), b(-5, 7);
  EXPECT_EQ(a + b, Rational(-8, 21));
  EXPECT_EQ(a * b, Rational(-5, 21));
  EXPECT_EQ((a * b) / b, a);
  EXPECT_EQ(a - a, Rational(0));
  EXPECT_THROW(a / Rational(0), DomainError);
}

TEST(Rational, OverflowIsReported) {
  Rational big(std::int64_t{1} << 40);
  EXPECT_THROW(big * big, DomainError);
}

TEST(Rational, ParseRejectsGarbage) {
  EXPECT_THROW(Rational::parse("1/0"), std::exception);
  EXPECT_THROW(Rational::parse("abc"), ParseError);
}

TEST(GaussianRational, UnitSquaresToMinusOne) {
  const auto i = GaussianRational::i();
  EXPECT_EQ(i * i, GaussianRational(-1));
  EXPECT_EQ(GaussianRational(1) / i, -i);
}

TEST(QuadSurd, SquareRootSquares) {
  for (int n : {2, 3, 5}) {
    const auto s = QuadSurd::sqrt(n);
    EXPECT_EQ(s * s, QuadSurd(n));
    EXPECT_EQ(s * (QuadSurd(1) / s), QuadSurd(1));
  }
  EXPECT_EQ(QuadSurd::sqrt(4), QuadSurd(2));
}

TEST(Power, NegativeExponentInverts) {
  EXPECT_EQ(power(Rational(2), -3), Rational(1, 8));
  EXPECT_EQ(power(Rational(3), 0), Rational(1));
}

TEST(Laurent, ArithmeticAndCancellation) {
  const auto q = LaurentQ::var('q');
  const auto qi = q.inverse();
  EXPECT_EQ(q * qi, LaurentQ(1));
  const auto p = (q + qi) * (q - qi);
  EXPECT_EQ(p, LaurentQ::var('q', 2) - LaurentQ::var('q', -2));
  EXPECT_TRUE((p - p).is_zero());
}

TEST(Laurent, SubstituteAndEvaluate) {
  const auto x = LaurentQ::var('x');
  const auto q = LaurentQ::var('q');
  const auto p = x * q + x.inverse();
  const auto s = p.substitute('x', q * q);
  EXPECT_EQ(s, LaurentQ::var('q', 3) + LaurentQ::var('q', -2));
  const Complex v = p.evaluate({{'x', 2.0}, {'q', 3.0}});
  EXPECT_NEAR(v.real(), 6.5, 1e-15);
}

TEST(Laurent, InverseOfNonMonomialThrows) {
  const auto q = LaurentQ::var('q');
  EXPECT_THROW((q + LaurentQ(1)).inverse(), DomainError);
}
