#include <gtest/gtest.h>

#include "urnlab/weights.hpp"

namespace {

using namespace urnlab;

TEST(Weights, Eval) {
  EXPECT_EQ(WeightSequence::linear(2).eval_exact(3), 6);
  EXPECT_EQ(WeightSequence::square().eval_exact(4), 16);
  EXPECT_EQ(WeightSequence::triangular().eval_exact(4), 10);
  EXPECT_EQ(WeightSequence::shifted_square().eval_exact(2), Rational("9/4"));
  EXPECT_EQ(WeightSequence::power(3, 3).eval_exact(2), 24);
  for (const auto& w : {WeightSequence::linear(1), WeightSequence::square(), WeightSequence::triangular(),
                        WeightSequence::shifted_square(), WeightSequence::power(2, 3),
                        WeightSequence::custom({Rational(5)})}) {
    EXPECT_EQ(w.eval_exact(0), 0) << w.describe();
  }
}

TEST(Weights, CustomRange) {
  const auto w = WeightSequence::custom({Rational(1), Rational(4), Rational(9)});
  EXPECT_EQ(w.eval_exact(3), 9);
  EXPECT_THROW(w.eval_exact(4), OutOfRange);
  EXPECT_THROW(WeightSequence::custom({Rational(1), Rational(0)}), DomainError);
  EXPECT_THROW(WeightSequence::linear(-1), DomainError);
}

TEST(Weights, Reciprocal) {
  const auto r = WeightSequence::linear(1).reciprocal();
  EXPECT_EQ(r.eval_exact(1), 1);
  EXPECT_EQ(r.eval_exact(2), Rational("1/2"));
  EXPECT_EQ(r.eval_exact(3), Rational("1/3"));
  EXPECT_EQ(r.eval_exact(0), 0);
  EXPECT_EQ(WeightSequence::square().reciprocal().eval_exact(3), Rational("1/9"));
  for (const auto& w : {WeightSequence::linear(3), WeightSequence::square(), WeightSequence::triangular(),
                        WeightSequence::shifted_square(), WeightSequence::power(Rational("1/2"), 2)}) {
    const auto back = w.reciprocal().reciprocal();
    for (unsigned j = 1; j <= 100; ++j) EXPECT_EQ(back.eval_exact(j), w.eval_exact(j));
  }
}

TEST(Weights, Distinct) {
  EXPECT_TRUE(check_distinct(WeightSequence::linear(1), 10));
  EXPECT_FALSE(check_distinct(WeightSequence::custom({Rational(1), Rational(1), Rational(2)}), 3));
  EXPECT_TRUE(check_distinct(WeightSequence::shifted_square(), 20));
  // Only the indices in use are checked.
  EXPECT_TRUE(check_distinct(WeightSequence::custom({Rational(1), Rational(2), Rational(2)}), 2));
}

TEST(Weights, BuiltInFamiliesIncrease) {
  for (const auto& w : {WeightSequence::linear(1), WeightSequence::linear(2), WeightSequence::square(),
                        WeightSequence::triangular(), WeightSequence::shifted_square(), WeightSequence::power(2, 3)}) {
    Rational prev = 0;
    for (unsigned j = 1; j <= 10000; ++j) {
      const Rational v = w.eval_exact(j);
      ASSERT_GT(v, prev) << w.describe() << " at " << j;
      prev = v;
    }
  }
}

TEST(Weights, NonIntegerPowerIsFloat) {
  const auto w = WeightSequence::power(1, Rational("1/2"));
  EXPECT_FALSE(w.is_exact());
  EXPECT_NEAR(w.eval<double>(4), 2.0, 1e-15);
  EXPECT_TRUE(check_distinct(w, 50));
}

TEST(Weights, TextAndJson) {
  for (const char* text : {"linear:2", "power:1/2:3", "square", "triangular", "shifted-square", "custom:1,4,9"}) {
    const auto w = WeightSequence::parse(text);
    EXPECT_EQ(WeightSequence::from_json(w.to_json()), w) << text;
  }
  const auto j = nlohmann::json::parse(R"({"family":"power","c":"1","r":"2"})");
  EXPECT_EQ(WeightSequence::from_json(j).eval_exact(5), 25);
  EXPECT_THROW(WeightSequence::parse("cubic"), DomainError);
}

TEST(Weights, UrnSpec) {
  const auto s = UrnSpec::two_color(Model::I, WeightSequence::linear(1), WeightSequence::square(), 3, 2);
  const auto d = s.dual();
  EXPECT_EQ(d.model, Model::II);
  EXPECT_EQ(d.weights[1].eval_exact(2), Rational("1/4"));
  EXPECT_EQ(UrnSpec::from_json(s.to_json()).to_json(), s.to_json());
  EXPECT_THROW(UrnSpec::multi(Model::I, {WeightSequence::linear(1)}, {1}), DomainError);
  EXPECT_THROW(UrnSpec::two_color(Model::I, WeightSequence::custom({Rational(1)}), WeightSequence::linear(1), 2, 1),
               OutOfRange);
}

}  // namespace
