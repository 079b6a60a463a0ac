#include <gtest/gtest.h>

#include "nilpiece/errors.hpp"
#include "nilpiece/grading.hpp"
#include "nilpiece/nilcone.hpp"

using namespace nilpiece;

TEST(Profile, FormattingAndAdmissibility) {
  const auto p = Profile::from_nonnegative({{0, 1}, {2, 1}});
  EXPECT_EQ(p.to_string(), "[[0,1],[2,1]]");
  EXPECT_EQ(p.at(-2), 1);
  EXPECT_EQ(p.total(), 3);
  EXPECT_EQ(p.top(), 2);
  EXPECT_TRUE(p.is_admissible(3));
  EXPECT_FALSE(p.is_admissible(5));
  EXPECT_FALSE(Profile::from_nonnegative({{0, 1}, {1, 1}}).is_admissible(3));  // odd degree, odd size
  EXPECT_FALSE(Profile::from_nonnegative({{0, 1}, {2, 2}}).is_admissible(5));  // f_0 < f_2
  EXPECT_EQ(Profile::trivial(5).to_string(), "[[0,5]]");
}

TEST(Profile, AdmissibleLists) {
  EXPECT_EQ(admissible_profiles(3).size(), 2u);
  const auto five = admissible_profiles(5);
  ASSERT_EQ(five.size(), 4u);
  for (const auto& p : five) EXPECT_TRUE(p.is_admissible(5));
  EXPECT_TRUE(std::is_sorted(five.begin(), five.end()));
}

TEST(QFiltrations, Counts) {
  const std::vector<std::tuple<int, int, int, std::size_t>> cases{
      {2, 1, 1, 4}, {3, 1, 1, 5}, {2, 2, 1, 6}, {2, 1, 2, 76}, {3, 1, 2, 241}};
  for (auto [p, k, N, n] : cases) {
    Field f = Field::create(p, k);
    const auto s = QuadraticSpace::standard(f, N);
    const auto all = enumerate_q_filtrations(s);
    EXPECT_EQ(all.size(), n) << "p=" << p << " k=" << k << " N=" << N;
    for (const auto& F : all) EXPECT_TRUE(F.is_q_filtration(s));
  }
  EXPECT_THROW(enumerate_q_filtrations(QuadraticSpace::standard(Field::create(2, 1), 4)), SizeError);
}

TEST(QFiltrations, LevelsMustDecrease) {
  Field f = Field::create(2, 1);
  const auto a = Subspace::span(f, 3, {vec::unit(3, 0)});
  const auto b = Subspace::span(f, 3, {vec::unit(3, 1)});
  EXPECT_THROW(QFiltration::from_levels(1, {a, b}), ContainmentViolation);
}

TEST(Splitting, RoundTripsEveryFiltration) {
  for (auto [p, k, N] : {std::tuple{2, 1, 2}, std::tuple{3, 1, 2}, std::tuple{2, 2, 1}}) {
    Field f = Field::create(p, k);
    const auto s = QuadraticSpace::standard(f, N);
    Rng rng(5);
    for (const auto& F : enumerate_q_filtrations(s)) {
      const auto g = split_filtration(s, F);
      EXPECT_NO_THROW(g.validate(s));
      EXPECT_TRUE(g.filtration() == F);
      EXPECT_TRUE(g.profile() == F.profile());
      const auto h = split_filtration(s, F, &rng);
      EXPECT_TRUE(h.filtration() == F);
    }
  }
}

TEST(Splitting, StandardGradingRealizesProfile) {
  Field f = Field::create(3, 1);
  const auto s = QuadraticSpace::standard(f, 2);
  for (const auto& p : admissible_profiles(5)) {
    const auto g = standard_grading(s, p);
    EXPECT_NO_THROW(g.validate(s));
    EXPECT_TRUE(g.profile() == p);
  }
}

TEST(GradedForms, BarFormAndConditions) {
  Field f = Field::create(2, 1);
  const auto s = QuadraticSpace::standard(f, 2);
  for (const auto& p : admissible_profiles(5)) {
    const auto g = standard_grading(s, p);
    const auto F = g.filtration();
    for (const auto& b : enumerate_graded_forms(g)) {
      ASSERT_TRUE(is_graded_form(g, b));
      ASSERT_TRUE(eta_vanishing(F, b));
      EXPECT_TRUE(bar_form(F, g, b).gram() == b.gram());
      const auto c = s2_conditions(s, g, b);
      EXPECT_EQ(c.b_prime, c.b_kernel_form);
      const auto bar = bar_decomposition(s, g, b);
      EXPECT_EQ(c.a(), bar.a1 && bar.a2) << p.to_string();
      if (in_S2_0(s, g, b)) EXPECT_TRUE(is_nilpotent(s, b));
    }
  }
}

TEST(GradedForms, OddCharacteristicPrimeCondition) {
  Field f = Field::create(3, 1);
  const auto s = QuadraticSpace::standard(f, 2);
  for (const auto& p : admissible_profiles(5)) {
    const auto g = standard_grading(s, p);
    for (const auto& b : enumerate_graded_forms(g)) {
      const auto c = s2_conditions(s, g, b);
      ASSERT_TRUE(c.a_prime.has_value());
      EXPECT_EQ(*c.a_prime, c.a());
    }
    EXPECT_THROW(bar_decomposition(s, g, AlternatingForm::zero(f, 5)), CharacteristicError);
  }
}

TEST(GradedForms, TrivialGradingAcceptsZero) {
  for (int p : {2, 3}) {
    Field f = Field::create(p, 1);
    const auto s = QuadraticSpace::standard(f, 1);
    const auto g = standard_grading(s, Profile::trivial(3));
    EXPECT_TRUE(in_S2_0(s, g, AlternatingForm::zero(f, 3)));
    EXPECT_TRUE(in_eta(s, g.filtration(), AlternatingForm::zero(f, 3)));
  }
}

TEST(GradedForms, RegularGradingMembership) {
  Field f = Field::create(2, 1);
  const auto s = QuadraticSpace::standard(f, 1);
  const auto g = standard_grading(s, Profile::from_nonnegative({{0, 1}, {2, 1}}));
  // V^2 = e_1, V^0 = e_0, V^-2 = e_-1: the only S(V)_2 block pairs degrees 0 and -2
  const auto b = AlternatingForm::elementary(f, 3, s.index(-1), s.index(0), 1);
  EXPECT_TRUE(is_graded_form(g, b));
  EXPECT_TRUE(in_S2_0(s, g, b));
  EXPECT_FALSE(in_S2_0(s, g, AlternatingForm::zero(f, 3)));
  EXPECT_FALSE(is_graded_form(g, AlternatingForm::elementary(f, 3, s.index(1), s.index(0), 1)));
}
