#include <gtest/gtest.h>

#include "nilpiece/classifier.hpp"
#include "nilpiece/errors.hpp"
#include "nilpiece/group_oracle.hpp"

using namespace nilpiece;

namespace {

const Profile kRegular3 = Profile::from_nonnegative({{0, 1}, {2, 1}});

}  // namespace

TEST(Classify, RegularDemoForm) {
  for (auto [p, k] : {std::pair{2, 1}, std::pair{3, 1}, std::pair{2, 2}, std::pair{5, 1}}) {
    Field f = Field::create(p, k);
    const auto s = QuadraticSpace::standard(f, 1);
    const auto b = AlternatingForm::elementary(f, 3, s.index(-1), s.index(0), 1);
    const auto r = classify(s, b);
    EXPECT_TRUE(r.profile == kRegular3) << "q=" << f.order();
    EXPECT_TRUE(piece_label(r) == r.profile);
    EXPECT_TRUE(r.filtration.is_q_filtration(s));
    EXPECT_TRUE(in_eta(s, r.filtration, b));
    EXPECT_FALSE(r.trace.empty());
  }
}

TEST(Classify, ZeroFormIsTrivial) {
  for (int p : {2, 3}) {
    Field f = Field::create(p, 1);
    for (int N : {1, 2}) {
      const auto s = QuadraticSpace::standard(f, N);
      const auto r = classify(s, AlternatingForm::zero(f, s.dim()));
      EXPECT_TRUE(r.profile == Profile::trivial(s.dim()));
      EXPECT_TRUE(r.filtration == QFiltration(f, s.dim()));
    }
  }
}

TEST(Classify, RejectsNonNilpotent) {
  for (int p : {2, 3}) {
    Field f = Field::create(p, 1);
    const auto s = QuadraticSpace::standard(f, 1);
    int rejected = 0;
    for (std::uint64_t i = 0; i < alternating_form_count(f, 3); ++i) {
      const auto b = alternating_form_at(f, 3, i);
      if (is_nilpotent(s, b)) continue;
      EXPECT_THROW(classify(s, b), NotNilpotent);
      ++rejected;
    }
    EXPECT_GT(rejected, 0);
  }
}

TEST(Classify, TalliesInDimensionFive) {
  Field f = Field::create(2, 1);
  const auto s = QuadraticSpace::standard(f, 2);
  std::map<std::string, int> tally;
  for (std::uint64_t i = 0; i < alternating_form_count(f, 5); ++i) {
    const auto b = alternating_form_at(f, 5, i);
    if (!is_nilpotent(s, b)) continue;
    const auto r = classify(s, b);
    EXPECT_TRUE(r.profile.is_admissible(5));
    ++tally[r.profile.to_string()];
  }
  EXPECT_EQ(tally["[[0,1],[1,2]]"], 15);
  EXPECT_EQ(tally["[[0,1],[2,1],[4,1]]"], 180);
  EXPECT_EQ(tally["[[0,3],[2,1]]"], 60);
  EXPECT_EQ(tally["[[0,5]]"], 1);
}

TEST(Classify, RandomizedChoicesAgree) {
  Field f = Field::create(2, 2);
  const auto s = QuadraticSpace::standard(f, 1);
  Rng rng(3);
  for (std::uint64_t i = 0; i < alternating_form_count(f, 3); ++i) {
    const auto b = alternating_form_at(f, 3, i);
    if (!is_nilpotent(s, b)) continue;
    EXPECT_TRUE(classify(s, b) == classify(s, b, {&rng}));
  }
}

TEST(Classify, Equivariant) {
  Field f = Field::create(3, 1);
  const auto s = QuadraticSpace::standard(f, 1);
  const auto g = enumerate_isometries(s);
  const auto b = AlternatingForm::elementary(f, 3, s.index(-1), s.index(0), 1);
  const auto r = classify(s, b);
  for (const auto& m : g.elements())
    EXPECT_TRUE(classify(s, transport_form(m, b)).filtration == r.filtration.transported(m));
}

TEST(ComputeH, CaseTagsForDimensionThree) {
  Field f = Field::create(2, 1);
  const auto s = QuadraticSpace::standard(f, 1);
  const auto b = AlternatingForm::elementary(f, 3, s.index(-1), s.index(0), 1);
  const auto c = extract_chain(s, b);
  ASSERT_TRUE(c);
  const auto h = compute_H(s, *c, b);
  EXPECT_FALSE(h.case_tag.empty());
  EXPECT_GT(h.n, 0);
  EXPECT_TRUE(s.q_vanishes_on(h.H) || h.H.dim() > 0);
}

TEST(WeightFiltration, JordanBlock) {
  Field f = Field::create(3, 1);
  Matrix a(f, 3, 3);
  a(0, 1) = 1;
  a(1, 2) = 1;
  const auto w = weight_filtration(a);
  EXPECT_TRUE(w.profile() == kRegular3);
  EXPECT_EQ(w.at(2).dim(), 1);
  EXPECT_EQ(w.at(0).dim(), 2);
  EXPECT_TRUE(weight_filtration(Matrix(f, 3, 3)) == QFiltration(f, 3));
}
