#include <gtest/gtest.h>

#include <random>

#include "support/families.hpp"
#include "urnlab/closedform.hpp"
#include "urnlab/oracle.hpp"

namespace {

using namespace urnlab;
using support::families;

const auto L1 = WeightSequence::linear(1);
constexpr auto kAlpha = Representation::alpha_poles;
constexpr auto kBeta = Representation::beta_poles;

TEST(ClosedForm, TwoColorExamples) {
  EXPECT_EQ(pmf_I<Rational>(L1, L1, 2, 2, 1, kAlpha), ratio(1, 3));
  EXPECT_EQ(pmf_I<Rational>(L1, L1, 2, 2, 1, kBeta), ratio(1, 3));
  EXPECT_EQ(pmf_I<Rational>(L1, L1, 1, 1, 0, kAlpha), ratio(1, 2));
  EXPECT_EQ(pmf_II<Rational>(L1, L1, 1, 1, 1, kBeta), ratio(1, 2));
  EXPECT_EQ(pmf_II<Rational>(L1, L1, 2, 1, 1, kAlpha), ratio(1, 6));
  EXPECT_EQ(pmf_II<Rational>(L1, L1, 2, 1, 1, kBeta), ratio(1, 6));
}

TEST(ClosedForm, NamedInstancesMatchReference) {
  ref::Urn one(1, {ref::linear(1), ref::square()});
  for (unsigned k = 0; k <= 3; ++k) {
    for (auto rep : {kAlpha, kBeta}) {
      EXPECT_EQ(pmf_I<Rational>(L1, WeightSequence::square(), 3, 2, k, rep), one.prob({3, 2}, {k}));
    }
  }
  ref::Urn two(2, {ref::linear(1), ref::triangular()});
  for (unsigned k = 0; k <= 3; ++k) {
    for (auto rep : {kAlpha, kBeta}) {
      EXPECT_EQ(pmf_II<Rational>(L1, WeightSequence::triangular(), 3, 3, k, rep), two.prob({3, 3}, {k}));
    }
  }
}

TEST(ClosedForm, AllFamiliesAgainstReference) {
  for (const auto& a : families()) {
    for (const auto& b : families()) {
      const TwoColorForms<Rational> forms(a.seq, b.seq, 7, 7);
      ref::Urn one(1, {a.ref, b.ref}), two(2, {a.ref, b.ref});
      for (unsigned n = 1; n <= 7; ++n) {
        for (unsigned m = 1; m <= 7; ++m) {
          Rational t1 = 0, t2 = 0;
          for (unsigned k = 0; k <= n; ++k) {
            for (auto rep : {kAlpha, kBeta}) {
              ASSERT_EQ(forms.pmf_I(n, m, k, rep), one.prob({n, m}, {k})) << a.name << "/" << b.name;
              ASSERT_EQ(forms.pmf_II(n, m, k, rep), two.prob({n, m}, {k})) << a.name << "/" << b.name;
            }
            t1 += forms.pmf_I(n, m, k, kAlpha);
            t2 += forms.pmf_II(n, m, k, kBeta);
          }
          ASSERT_EQ(t1, 1);
          ASSERT_EQ(t2, 1);
        }
      }
    }
  }
}

TEST(ClosedForm, DualityAtClosedFormLevel) {
  for (const auto& a : families()) {
    for (const auto& b : families()) {
      const TwoColorForms<Rational> one(a.seq, b.seq, 6, 6);
      const TwoColorForms<Rational> two(a.seq.reciprocal(), b.seq.reciprocal(), 6, 6);
      for (unsigned n = 1; n <= 6; ++n) {
        for (unsigned m = 1; m <= 6; ++m) {
          for (unsigned k = 0; k <= n; ++k) ASSERT_EQ(one.pmf_I(n, m, k, kAlpha), two.pmf_II(n, m, k, kAlpha));
        }
      }
    }
  }
}

TEST(ClosedForm, Preconditions) {
  const auto repeated = WeightSequence::custom({Rational(1), Rational(2), Rational(2)});
  EXPECT_THROW(pmf_I<Rational>(repeated, L1, 3, 1, 0, kAlpha), DistinctnessViolation);
  EXPECT_THROW(pmf_I<Rational>(L1, L1, 2, 2, 3, kAlpha), OutOfRange);
  EXPECT_THROW(pmf_II<Rational>(L1, L1, 0, 2, 0, kAlpha), DomainError);
}

TEST(ClosedForm, FloatModes) {
  const auto sq = WeightSequence::square();
  const Rational exact = pmf_II<Rational>(L1, sq, 9, 9, 3, kBeta);
  EXPECT_LT(abs(pmf_II<BigFloat>(L1, sq, 9, 9, 3, kBeta) - to_bigfloat(exact)), BigFloat("1e-60"));
  EXPECT_NEAR(pmf_II<double>(L1, sq, 9, 9, 3, kBeta), exact.get_d(), 1e-9);
}

TEST(ClosedForm, SamplingPolya) {
  EXPECT_EQ(pmf_sampling_polya<Rational>(1, 1, 2, 2, 2, PolyaForm::first), ratio(1, 6));
  EXPECT_EQ(pmf_sampling_polya<Rational>(1, 1, 1, 5, 1, PolyaForm::second), ratio(1, 6));
  for (unsigned n = 0; n <= 10; ++n) {
    for (unsigned m = 1; m <= 10; ++m) {
      for (unsigned k = 0; k <= n; ++k) {
        const Rational folklore = ratio(ref::binom(n + m - 1 - k, m - 1), ref::binom(n + m, n));
        for (auto form : {PolyaForm::first, PolyaForm::second}) {
          ASSERT_EQ(pmf_sampling_polya<Rational>(1, 1, n, m, k, form), folklore);
        }
      }
    }
  }
  for (unsigned k = 0; k <= 2; ++k) {
    const Rational want = pmf_I<Rational>(WeightSequence::linear(2), WeightSequence::linear(3), 2, 2, k, kAlpha);
    EXPECT_EQ(pmf_sampling_polya<Rational>(2, 3, 2, 2, k, PolyaForm::first), want);
    EXPECT_EQ(pmf_sampling_polya<Rational>(2, 3, 2, 2, k, PolyaForm::second), want);
  }
}

// Classical OK Corral law written out independently:
// k!/(n+m)! sum_{r=1}^{n} (-1)^{n-r} binom(n+m, n-r) binom(r-1, k-1) r^{n+m-k}.
Rational classical_ok(unsigned n, unsigned m, unsigned k) {
  mpz_class s = 0, fk = 1, fnm = 1;
  for (unsigned i = 2; i <= k; ++i) fk *= i;
  for (unsigned i = 2; i <= n + m; ++i) fnm *= i;
  for (unsigned r = 1; r <= n; ++r) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), r, n + m - k);
    mpz_class t = ref::binom(n + m, n - r) * ref::binom(r - 1, k - 1) * p;
    s += (n - r) % 2 ? mpz_class(-t) : t;
  }
  return ratio(fk * s, fnm);
}

TEST(ClosedForm, OkCorralPolya) {
  EXPECT_EQ(pmf_okcorral_polya<Rational>(1, 1, 2, 1, 2, PolyaForm::first), ratio(2, 3));
  EXPECT_EQ(pmf_okcorral_polya<Rational>(1, 1, 1, 1, 0, PolyaForm::second), ratio(1, 2));
  for (unsigned n = 1; n <= 10; ++n) {
    for (unsigned m = 1; m <= 10; ++m) {
      for (unsigned k = 1; k <= n; ++k) {
        ASSERT_EQ(pmf_okcorral_polya<Rational>(1, 1, n, m, k, PolyaForm::first), classical_ok(n, m, k));
      }
    }
  }
  ref::Urn urn(2, {ref::linear(3), ref::linear(2)});
  for (unsigned k = 0; k <= 3; ++k) {
    for (auto form : {PolyaForm::first, PolyaForm::second}) {
      EXPECT_EQ(pmf_okcorral_polya<Rational>(2, 3, 3, 2, k, form), urn.prob({3, 2}, {k}));
    }
  }
}

TEST(ClosedForm, OkCorralFindingsAllMatch) {
  for (auto [b, c] : {std::pair{1ul, 1ul}, {2ul, 3ul}, {3ul, 1ul}}) {
    for (const auto& f : okcorral_form_findings(b, c, 6, 6)) {
      EXPECT_TRUE(f.matches) << f.formula << ": " << f.first_mismatch;
      EXPECT_GT(f.instances, 0u);
    }
  }
}

TEST(ClosedForm, MultiExamples) {
  const std::vector<WeightSequence> w(3, L1);
  EXPECT_EQ(pmf_multi_I<Rational>(w, {1, 1, 1}, {1, 1}), ratio(1, 3));
  EXPECT_EQ(pmf_multi_II<Rational>(w, {1, 1, 1}, {1, 1}), ratio(1, 3));
  EXPECT_EQ(pmf_multi_polya<Rational>({1, 1, 1}, {1, 1, 1}, {1, 1}), ratio(1, 3));
  Rational total = 0;
  for (unsigned a = 0; a <= 1; ++a) {
    for (unsigned b = 0; b <= 1; ++b) total += pmf_multi_polya<Rational>({1, 1, 1}, {1, 1, 1}, {a, b});
  }
  EXPECT_EQ(total, 1);
  EXPECT_THROW(pmf_multi_II<Rational>(w, {1, 1, 1}, {0, 1}), ClosedFormUnavailable);
}

TEST(ClosedForm, MultiAgainstReference) {
  const std::vector<WeightSequence> w{L1, WeightSequence::square(), L1};
  ref::Urn one(1, {ref::linear(1), ref::square(), ref::linear(1)});
  const auto d = pmf_multi_distribution<Rational>(UrnSpec::multi(Model::I, w, {2, 2, 2}));
  d.distribution.box().for_each([&](const std::vector<unsigned>& k) {
    EXPECT_EQ(pmf_multi_I<Rational>(w, {2, 2, 2}, k), one.prob({2, 2, 2}, k));
  });
  EXPECT_TRUE(d.distribution.is_valid());

  const std::vector<WeightSequence> w2{L1, WeightSequence::linear(2), L1};
  ref::Urn two(2, {ref::linear(1), ref::linear(2), ref::linear(1)});
  for (unsigned a = 1; a <= 2; ++a) {
    for (unsigned b = 1; b <= 2; ++b) EXPECT_EQ(pmf_multi_II<Rational>(w2, {2, 2, 2}, {a, b}), two.prob({2, 2, 2}, {a, b}));
  }
  const auto m2 = pmf_multi_distribution<Rational>(UrnSpec::multi(Model::II, w2, {2, 2, 2}));
  EXPECT_TRUE(m2.distribution.is_valid());
  EXPECT_FALSE(m2.closed_form[0]);
  EXPECT_TRUE(m2.closed_form.back());

  ref::Urn polya(1, {ref::linear(2), ref::linear(1), ref::linear(3)});
  IndexBox({2, 1}).for_each([&](const std::vector<unsigned>& k) {
    EXPECT_EQ(pmf_multi_polya<Rational>({2, 1, 3}, {2, 1, 2}, k), polya.prob({2, 1, 2}, k));
  });
}

TEST(ClosedForm, MultiReducesToTwoColor) {
  std::mt19937 gen(5);
  auto fam = families();
  for (int trial = 0; trial < 20; ++trial) {
    const auto& a = fam[gen() % fam.size()];
    const auto& b = fam[gen() % fam.size()];
    const unsigned n = 1 + gen() % 6, m = 1 + gen() % 6;
    for (unsigned k = 0; k <= n; ++k) {
      EXPECT_EQ(pmf_multi_I<Rational>({a.seq, b.seq}, {n, m}, {k}), pmf_I<Rational>(a.seq, b.seq, n, m, k, kAlpha));
      if (k >= 1) {
        EXPECT_EQ(pmf_multi_II<Rational>({a.seq, b.seq}, {n, m}, {k}), pmf_II<Rational>(a.seq, b.seq, n, m, k, kBeta));
      }
    }
  }
}

TEST(ClosedForm, LiteralModelIIReadingDisagrees) {
  const auto findings = multi_II_reading_findings({L1, WeightSequence::square(), WeightSequence::linear(2)}, {3, 3, 2});
  ASSERT_EQ(findings.size(), 2u);
  EXPECT_TRUE(findings[0].matches) << findings[0].first_mismatch;
  EXPECT_FALSE(findings[1].matches);
}

TEST(ClosedForm, PartialFractions) {
  auto two = partial_fraction_check<Rational>({Rational(1), Rational(2)}, Rational(0));
  EXPECT_EQ(two.first, ratio(1, 2));
  EXPECT_EQ(two.second, ratio(1, 2));
  auto three = partial_fraction_check<Rational>({Rational(1), Rational(2), Rational(3)}, Rational(1));
  EXPECT_EQ(three.first, ratio(1, 24));
  EXPECT_EQ(three.second, ratio(1, 24));
  EXPECT_THROW(partial_fraction_check<Rational>({Rational(1), Rational(1)}, Rational(0)), DistinctnessViolation);

  std::mt19937 gen(9);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Rational> nodes;
    while (nodes.size() < 2 + trial % 5) {
      Rational v = ratio(1 + static_cast<long>(gen() % 40), 1 + static_cast<long>(gen() % 7));
      if (std::find(nodes.begin(), nodes.end(), v) == nodes.end()) nodes.push_back(v);
    }
    const Rational x = ratio(static_cast<long>(gen() % 30), 1 + static_cast<long>(gen() % 5));
    auto [lhs, rhs] = partial_fraction_check(nodes, x);
    ASSERT_EQ(lhs, rhs);
  }
}

}  // namespace
