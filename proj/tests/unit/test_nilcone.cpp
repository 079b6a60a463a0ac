#include <gtest/gtest.h>

#include "nilpiece/errors.hpp"
#include "nilpiece/group_oracle.hpp"
#include "nilpiece/nilcone.hpp"

using namespace nilpiece;

namespace {

std::uint64_t count_nilpotent(const Field& f, int N) {
  const auto s = QuadraticSpace::standard(f, N);
  std::uint64_t n = 0;
  for (std::uint64_t i = 0; i < alternating_form_count(f, s.dim()); ++i)
    if (is_nilpotent(s, alternating_form_at(f, s.dim(), i))) ++n;
  return n;
}

std::uint64_t ipow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

}  // namespace

TEST(Nilpotency, IndexOfShift) {
  Field f = Field::create(3, 1);
  Matrix a(f, 4, 4);
  for (int i = 0; i + 1 < 4; ++i) a(i, i + 1) = 1;
  EXPECT_EQ(nilpotency_index(a), 4);
  EXPECT_EQ(nilpotency_index(Matrix(f, 3, 3)), 1);
  EXPECT_EQ(nilpotency_index(Matrix(f, 0, 0)), 0);
  EXPECT_EQ(nilpotency_index(Matrix::identity(f, 2)), -1);
  EXPECT_FALSE(is_nilpotent_matrix(Matrix::identity(f, 2)));
  EXPECT_THROW(nilpotency_index(Matrix(f, 2, 3)), DimensionMismatch);
}

TEST(Nilpotency, CountsMatchPowerOfQ) {
  for (auto [p, k] : {std::pair{2, 1}, std::pair{3, 1}, std::pair{2, 2}, std::pair{5, 1}}) {
    Field f = Field::create(p, k);
    EXPECT_EQ(count_nilpotent(f, 1), ipow(f.order(), 2)) << "q=" << f.order();
  }
  EXPECT_EQ(count_nilpotent(Field::create(2, 1), 2), 256u);
}

TEST(Nilpotency, AgreesWithGoodBasisOracle) {
  for (auto [p, k] : {std::pair{2, 1}, std::pair{3, 1}}) {
    Field f = Field::create(p, k);
    const auto s = QuadraticSpace::standard(f, 1);
    const auto g = enumerate_isometries(s);
    for (std::uint64_t i = 0; i < alternating_form_count(f, 3); ++i) {
      const auto b = alternating_form_at(f, 3, i);
      EXPECT_EQ(is_nilpotent(s, b), good_basis_oracle(g, b)) << "form " << i;
    }
  }
  EXPECT_THROW(good_basis_oracle(QuadraticSpace::standard(Field::create(2, 1), 3), AlternatingForm::zero(Field::create(2, 1), 7)),
               SizeError);
}

TEST(Chain, ZeroFormHasTrivialChain) {
  Field f = Field::create(2, 1);
  const auto s = QuadraticSpace::standard(f, 2);
  auto c = extract_chain(s, AlternatingForm::zero(f, 5));
  ASSERT_TRUE(c);
  EXPECT_EQ(c->m, 0);
  EXPECT_EQ(c->W.dim(), 4);
  EXPECT_EQ(c->lambda1, 1);
  EXPECT_EQ(c->l1, 1);
}

TEST(Chain, DefiningIdentitiesOnAllNilpotentForms) {
  for (int k : {1, 2}) {
    Field f = Field::create(2, k);
    const auto s = QuadraticSpace::standard(f, 1);
    for (std::uint64_t i = 0; i < alternating_form_count(f, 3); ++i) {
      const auto b = alternating_form_at(f, 3, i);
      if (!is_nilpotent(s, b)) continue;
      auto c = extract_chain(s, b);
      ASSERT_TRUE(c);
      EXPECT_EQ(static_cast<int>(c->v.size()), c->m + 1);
      EXPECT_EQ(static_cast<int>(c->u.size()), c->m);
      EXPECT_EQ(2 * c->m + 1 + c->W.dim(), 3);
      EXPECT_EQ(s.q(c->v.back()), 1);
      for (int j = 0; j < c->m; ++j) EXPECT_EQ(s.q(c->v[j]), 0);
      EXPECT_GE(2 * c->l1, c->lambda1);
    }
  }
}

TEST(Chain, DemoFormReachesRadical) {
  Field f = Field::create(2, 1);
  const auto s = QuadraticSpace::standard(f, 1);
  // beta_xi(e_{-1}, e_0) = 1
  const auto b = AlternatingForm::elementary(f, 3, s.index(-1), s.index(0), 1);
  auto v = extract_v_chain(s, b);
  ASSERT_TRUE(v);
  EXPECT_EQ(v->m, 1);
  const auto pair = induced_pair(s, *v, b);
  EXPECT_EQ(pair.quotient.dim(), 0);  // L^perp = L in dimension 3
  EXPECT_TRUE(pair.L == pair.L_perp);
  EXPECT_EQ(pair.v_star.size(), 1u);
}

TEST(Chain, OddCharacteristicRejected) {
  Field f = Field::create(3, 1);
  const auto s = QuadraticSpace::standard(f, 1);
  EXPECT_THROW(extract_v_chain(s, AlternatingForm::zero(f, 3)), CharacteristicError);
  EXPECT_NO_THROW(form_endomorphism(s, AlternatingForm::zero(f, 3)));
  EXPECT_THROW(form_endomorphism(QuadraticSpace::standard(Field::create(2, 1), 1), AlternatingForm::zero(Field::create(2, 1), 3)),
               CharacteristicError);
}

TEST(Chain, RandomizedChoicesKeepInvariants) {
  Field f = Field::create(2, 2);
  const auto s = QuadraticSpace::standard(f, 1);
  Rng rng(11);
  for (std::uint64_t i = 0; i < alternating_form_count(f, 3); ++i) {
    const auto b = alternating_form_at(f, 3, i);
    if (!is_nilpotent(s, b)) continue;
    const auto base = extract_chain(s, b);
    const auto alt = extract_chain(s, b, {&rng});
    ASSERT_TRUE(base && alt);
    EXPECT_EQ(base->m, alt->m);
    EXPECT_EQ(base->lambda1, alt->lambda1);
    EXPECT_EQ(base->l1, alt->l1);
    EXPECT_EQ(base->rho_zero, alt->rho_zero);
  }
}
