#include <gtest/gtest.h>

#include <random>

#include "support/reference.hpp"
#include "urnlab/moments.hpp"
#include "urnlab/oracle.hpp"

namespace {

using namespace urnlab;

// E(K^s) and E(K^{(s)}) over a reference law.
Rational ref_moment(ref::Urn& urn, const ref::State& start, unsigned s, bool falling) {
  Rational total = 0;
  for (const auto& [k, p] : urn.law(start)) {
    Rational v = 1;
    for (unsigned i = 0; i < s; ++i) v *= falling ? Rational(static_cast<long>(k[0]) - static_cast<long>(i)) : Rational(k[0]);
    total += v * p;
  }
  return total;
}

Polynomial<Rational> poly(std::vector<long> c) {
  std::vector<Rational> v;
  for (long x : c) v.emplace_back(x);
  return Polynomial<Rational>(std::move(v));
}

TEST(Moments, SamplingExamples) {
  EXPECT_EQ(sampling_factorial_moment<Rational>(1, 1, 2, 1, 1), 1);
  EXPECT_EQ(sampling_factorial_moment<Rational>(3, 2, 4, 2, 0), 1);
  EXPECT_EQ(sampling_factorial_moment<Rational>(1, 1, 5, 3, 2), 2);
  EXPECT_EQ(sampling_raw_moment<Rational>(1, 1, 2, 1, 2), ratio(5, 3));
  EXPECT_EQ(sampling_raw_moment<Rational>(2, 3, 4, 3, 1), sampling_factorial_moment<Rational>(2, 3, 4, 3, 1));
}

TEST(Moments, SamplingAgainstReference) {
  std::mt19937 gen(21);
  for (int trial = 0; trial < 50; ++trial) {
    const unsigned long a = 1 + gen() % 3, d = 1 + gen() % 3;
    const unsigned n = gen() % 7, m = 1 + gen() % 6, s = gen() % 5;
    ref::Urn urn(1, {ref::linear(static_cast<long>(a)), ref::linear(static_cast<long>(d))});
    ASSERT_EQ(sampling_factorial_moment<Rational>(a, d, n, m, s), ref_moment(urn, {n, m}, s, true));
    ASSERT_EQ(sampling_raw_moment<Rational>(a, d, n, m, s), ref_moment(urn, {n, m}, s, false));
  }
}

TEST(Moments, MixedFactorial) {
  EXPECT_EQ(multi_mixed_factorial_moment<Rational>({1, 1, 1}, {1, 1, 1}, {1, 1}), ratio(1, 3));
  EXPECT_EQ(multi_mixed_factorial_moment<Rational>({2, 1, 3}, {3, 2, 2}, {0, 0}), 1);
  std::mt19937 gen(8);
  for (int trial = 0; trial < 20; ++trial) {
    const std::vector<unsigned long> a{1 + gen() % 3, 1 + gen() % 3, 1 + gen() % 3};
    const std::vector<unsigned> n{gen() % 4, gen() % 4, 1 + gen() % 3};
    const std::vector<unsigned> s{gen() % 3, gen() % 3};
    ref::Urn urn(1, {ref::linear(static_cast<long>(a[0])), ref::linear(static_cast<long>(a[1])),
                     ref::linear(static_cast<long>(a[2]))});
    Rational want = 0;
    for (const auto& [k, p] : urn.law(n)) {
      Rational v = p;
      for (unsigned j = 0; j < 2; ++j) {
        for (unsigned i = 0; i < s[j]; ++i) v *= static_cast<long>(k[j]) - static_cast<long>(i);
      }
      want += v;
    }
    ASSERT_EQ(multi_mixed_factorial_moment<Rational>(a, n, s), want);
  }
}

TEST(Moments, PuyhaubertPolynomials) {
  EXPECT_EQ(puyhaubert_f(0), poly({1}));
  EXPECT_TRUE(puyhaubert_f(1).is_zero());
  EXPECT_EQ(puyhaubert_f(2), poly({0, 1}));
  EXPECT_EQ(puyhaubert_f(3), poly({0, -1}));
  EXPECT_EQ(puyhaubert_f(4), poly({0, 1, 3}));
  EXPECT_EQ(puyhaubert_g(1), poly({0, 1}));
  EXPECT_EQ(puyhaubert_g(2), poly({0, -1}));
  EXPECT_EQ(puyhaubert_g(3), poly({0, 1, 2}));
  mpz_class odd = 1, even = 1;
  for (unsigned n = 1; n <= 10; ++n) {
    odd *= 2 * n - 1;
    even *= 2 * n;
    EXPECT_EQ(puyhaubert_f(2 * n).coefficient(n), Rational(odd)) << n;
    EXPECT_EQ(puyhaubert_g(2 * n + 1).coefficient(n + 1), Rational(even)) << n;
  }
  for (unsigned n = 2; n <= 20; ++n) {
    EXPECT_EQ(puyhaubert_f(n).degree(), static_cast<long>(n / 2)) << n;
    EXPECT_EQ(puyhaubert_g(n).degree(), static_cast<long>((n + 1) / 2)) << n;
  }
}

TEST(Moments, PuyhaubertIdentity) {
  EXPECT_EQ(puyhaubert_sum_identity_check(1, 0).first, 1);
  EXPECT_EQ(puyhaubert_sum_identity_check(1, 0).second, 1);
  for (unsigned l = 1; l <= 20; ++l) {
    for (unsigned s = 0; s <= 8; ++s) {
      auto [lhs, rhs] = puyhaubert_sum_identity_check(l, s);
      ASSERT_EQ(lhs, rhs) << l << "," << s;
    }
  }
}

TEST(Moments, OkCorralRawMoment) {
  EXPECT_EQ(okcorral_raw_moment<Rational>(1, 1, 1, 1, 1), ratio(1, 2));
  ref::Urn unit(2, {ref::linear(1), ref::linear(1)});
  EXPECT_EQ(okcorral_raw_moment<Rational>(1, 1, 2, 1, 1), ref_moment(unit, {2, 1}, 1, false));
  std::mt19937 gen(4);
  for (int trial = 0; trial < 30; ++trial) {
    const unsigned long b = 1 + gen() % 3, c = 1 + gen() % 3;
    const unsigned n = 1 + gen() % 6, m = 1 + gen() % 6, s = 1 + gen() % 3;
    ref::Urn urn(2, {ref::linear(static_cast<long>(c)), ref::linear(static_cast<long>(b))});
    ASSERT_EQ(okcorral_raw_moment<Rational>(b, c, n, m, s), ref_moment(urn, {n, m}, s, false))
        << b << " " << c << " " << n << " " << m << " " << s;
  }
}

TEST(Moments, OkCorralLiteralExponentDisagrees) {
  ref::Urn urn(2, {ref::linear(1), ref::linear(1)});
  EXPECT_NE(okcorral_raw_moment<Rational>(1, 1, 3, 2, 1, OkCorralExponent::derivation_literal),
            ref_moment(urn, {3, 2}, 1, false));
}

TEST(Moments, MPolynomial) {
  EXPECT_EQ(m_polynomial(1), poly({0, 1, 1}));
  for (unsigned s = 1; s <= 5; ++s) {
    const auto p = m_polynomial(s);
    EXPECT_EQ(p.degree(), static_cast<long>(2 * s));
    EXPECT_EQ(p.coefficient(2 * s), 1);
  }
  EXPECT_THROW(m_polynomial(0), DomainError);
}

TEST(Moments, MPolynomialMoment) {
  EXPECT_EQ(okcorral_m_moment<Rational>(1, 1, 1, 1, 1, MsForm::factorial_n_times_m), 1);
  for (unsigned long b = 1; b <= 2; ++b) {
    for (unsigned long c = 1; c <= 2; ++c) {
      const RecurrenceTable<Rational> table(Model::II, WeightSequence::linear(c), WeightSequence::linear(b), 8, 8);
      for (unsigned s = 1; s <= 3; ++s) {
        const auto ms = m_polynomial(s);
        for (unsigned n = 1; n <= 8; ++n) {
          for (unsigned m = 1; m <= 8; ++m) {
            const Rational a1 = okcorral_m_moment<Rational>(b, c, n, m, s, MsForm::factorial_n_plus_m);
            const Rational a2 = okcorral_m_moment<Rational>(b, c, n, m, s, MsForm::factorial_n_times_m);
            ASSERT_EQ(a1, a2);
            ASSERT_EQ(a1, polynomial_moment_direct(table.distribution(n, m), ms));
          }
        }
      }
    }
  }
}

}  // namespace
