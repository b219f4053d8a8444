#include <gtest/gtest.h>

#include "urnlab/numerics.hpp"
#include "urnlab/polynomial.hpp"
#include "urnlab/scalar.hpp"

namespace {

using namespace urnlab;

Rational q(const char* s) { return Rational(s); }

TEST(Numerics, BinomGeneral) {
  EXPECT_EQ(binom_general(5, 2), 10);
  EXPECT_EQ(binom_general(q("7/2"), 2), q("35/8"));
  EXPECT_EQ(binom_general(3, 0), 1);
  for (unsigned x = 0; x <= 30; ++x) {
    for (unsigned n = 0; n <= x; ++n) {
      mpz_class f = 1;
      for (unsigned i = 2; i <= x; ++i) f *= i;
      mpz_class g = 1, h = 1;
      for (unsigned i = 2; i <= n; ++i) g *= i;
      for (unsigned i = 2; i <= x - n; ++i) h *= i;
      EXPECT_EQ(binom_general(x, n), Rational(f / (g * h))) << x << "," << n;
    }
  }
}

TEST(Numerics, Stirling) {
  EXPECT_EQ(stirling_second(0, 0), 1);
  EXPECT_EQ(stirling_second(4, 2), 7);
  EXPECT_EQ(stirling_second(3, 5), 0);
  EXPECT_EQ(stirling_first_unsigned(3, 1), 2);
  EXPECT_EQ(stirling_first_unsigned(4, 0), 0);
  for (unsigned n = 0; n <= 12; ++n) EXPECT_EQ(stirling_first_unsigned(n, n), 1);
}

TEST(Numerics, StirlingSecondExpandsPowers) {
  for (unsigned n = 0; n <= 10; ++n) {
    for (long x = -5; x < 15; ++x) {
      Rational lhs = 0;
      for (unsigned k = 0; k <= n; ++k) lhs += Rational(stirling_second(n, k)) * falling_factorial(Rational(x), k);
      EXPECT_EQ(lhs, pow_int(Rational(x), n)) << n << " at " << x;
    }
  }
}

TEST(Numerics, StirlingFirstExpandsRisingFactorial) {
  for (unsigned n = 0; n <= 10; ++n) {
    for (long x = -5; x < 15; ++x) {
      Rational lhs = 0, rising = 1;
      for (unsigned k = 0; k <= n; ++k) lhs += Rational(stirling_first_unsigned(n, k)) * pow_int(Rational(x), k);
      for (unsigned i = 0; i < n; ++i) rising *= x + static_cast<long>(i);
      EXPECT_EQ(lhs, rising);
    }
  }
}

TEST(Numerics, FallingFactorial) {
  EXPECT_EQ(falling_factorial(Rational(5), 2), 20);
  EXPECT_EQ(falling_factorial(q("7/3"), 0), 1);
  EXPECT_EQ(falling_factorial(Rational(3), 5), 0);
  EXPECT_DOUBLE_EQ(falling_factorial(5.0, 3), 60.0);
}

TEST(Numerics, RamanujanQ) {
  EXPECT_EQ(ramanujan_q(1), 2);
  EXPECT_EQ(ramanujan_q(2), q("5/2"));
  EXPECT_EQ(ramanujan_q(3), q("26/9"));
  EXPECT_THROW(ramanujan_q(0), DomainError);
  // Summed from the last term down, with the ratio n^{(i)}/n^i built from scratch.
  for (unsigned n = 1; n <= 50; ++n) {
    Rational total = 0;
    for (unsigned i = n + 1; i-- > 0;) {
      Rational t = 1;
      for (unsigned j = 0; j < i; ++j) t *= ratio(static_cast<long>(n - j), static_cast<long>(n));
      total += t;
    }
    EXPECT_EQ(ramanujan_q(n), total) << n;
  }
}

TEST(Numerics, RationalText) {
  EXPECT_EQ(to_string(Rational(0)), "0/1");
  EXPECT_EQ(to_string(Rational(1)), "1/1");
  EXPECT_EQ(to_string(q("-6/4")), "-3/2");
  EXPECT_EQ(parse_rational("6/4"), q("3/2"));
  EXPECT_EQ(parse_rational("0.25"), q("1/4"));
  EXPECT_EQ(parse_rational("-1.5e-2"), q("-3/200"));
  EXPECT_THROW(parse_rational("1/0"), DomainError);
  EXPECT_THROW(parse_rational("abc"), DomainError);
}

TEST(Numerics, ScalarModesDoNotMix) {
  const Scalar a(q("1/3")), b(q("1/6"));
  EXPECT_EQ((a + b).serialize(), "1/2");
  EXPECT_THROW(a + Scalar(0.5), ModeMismatch);
  EXPECT_THROW(Scalar(BigFloat(1)) * Scalar(1.0), ModeMismatch);
  EXPECT_THROW(a.get<double>(), ModeMismatch);
  EXPECT_THROW(a / Scalar(Rational(0)), DomainError);
}

TEST(Numerics, ScalarRoundTrip) {
  for (const Scalar& s : {Scalar(q("-22/7")), Scalar(0.1), Scalar(bigfloat_pi())}) {
    const Scalar back = Scalar::parse(s.serialize());
    EXPECT_EQ(back.mode(), s.mode());
    EXPECT_EQ(back.serialize(), s.serialize());
  }
  EXPECT_EQ(Scalar(q("2/3")).decimal(4), "0.6667");
  EXPECT_EQ(Scalar(q("-1/8")).decimal(2), "-0.13");
}

TEST(Numerics, CompensatedSumKeepsSmallTerms) {
  std::vector<double> terms{1e16, 1.0, -1e16, 1.0};
  EXPECT_DOUBLE_EQ(sum_terms(terms), 2.0);
}

TEST(Numerics, PolynomialCanonicalDegree) {
  Polynomial<Rational> zero;
  EXPECT_EQ(zero.degree(), -1);
  Polynomial<Rational> p({Rational(1), Rational(2), Rational(0)});
  EXPECT_EQ(p.degree(), 1);
  EXPECT_EQ(p(Rational(3)), 7);
  Polynomial<Rational> d = p;
  d -= p;
  EXPECT_TRUE(d.is_zero());
  EXPECT_EQ(d.degree(), -1);
}

TEST(Numerics, PrecisionScope) {
  const unsigned before = precision_bits();
  {
    PrecisionScope scope(128);
    EXPECT_GE(precision_bits(), 128u);
  }
  EXPECT_EQ(precision_bits(), before);
}

}  // namespace
