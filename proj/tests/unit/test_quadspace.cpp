#include <gtest/gtest.h>

#include "nilpiece/errors.hpp"
#include "nilpiece/quadspace.hpp"

using namespace nilpiece;

TEST(StandardSpace, Examples) {
  Field f2 = Field::create(2, 1), f3 = Field::create(3, 1);
  const auto s = QuadraticSpace::standard(f2, 1);
  EXPECT_EQ(s.dim(), 3);
  EXPECT_TRUE(s.radical() == Subspace::span(f2, 3, {vec::unit(3, s.index(0))}));
  EXPECT_EQ(s.q(vec::unit(3, s.index(0))), 1);
  const auto t = QuadraticSpace::standard(f3, 1);
  EXPECT_EQ(t.polar()(t.index(0), t.index(0)), 2);
  EXPECT_TRUE(t.radical().is_zero());
  const auto u = QuadraticSpace::standard(f2, 2);
  EXPECT_EQ(u.dim(), 5);
  EXPECT_EQ(u.beta(vec::unit(5, u.index(1)), vec::unit(5, u.index(-1))), 1);
  EXPECT_TRUE(is_good_basis(u, Matrix::identity(f2, 5)));
}

TEST(StandardSpace, PolarIdentityAndRadical) {
  for (auto [p, k] : {std::pair{2, 1}, std::pair{2, 2}, std::pair{3, 1}, std::pair{5, 1}}) {
    Field f = Field::create(p, k);
    for (int N : {1, 2, 3}) {
      const auto s = QuadraticSpace::standard(f, N);
      const int d = s.dim();
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
          const Vec a = vec::unit(d, i), b = vec::unit(d, j);
          const Vec sum = vec::add(f, a, b);
          EXPECT_EQ(s.beta(a, b), f.sub(f.sub(s.q(sum), s.q(a)), s.q(b)));
        }
      EXPECT_EQ(s.radical().dim(), p == 2 ? 1 : 0);
      for (int i = 0; i < s.radical().dim(); ++i) EXPECT_NE(s.q(s.radical().basis().row(i)), 0);
    }
  }
}

TEST(XiToForm, Examples) {
  Field f = Field::create(2, 1);
  const auto s = QuadraticSpace::standard(f, 1);
  EXPECT_TRUE(xi_to_form(s, Matrix::identity(f, 3)).is_zero());
  EXPECT_TRUE(xi_to_form(s, Matrix(f, 3, 3)).is_zero());
  // X e_{-1} = e_0: beta_X(e_{-1}, v) = beta(e_0, v) - beta(e_{-1}, X v) = -beta(e_{-1}, Xv).
  Matrix x(f, 3, 3);
  x(s.index(0), s.index(-1)) = 1;
  const auto b = xi_to_form(s, x);
  Matrix expect(f, 3, 3);
  EXPECT_TRUE(b.gram() == expect);
}

TEST(XiToForm, AlternatingOnAllEndomorphismsDim3GF2) {
  Field f = Field::create(2, 1);
  const auto s = QuadraticSpace::standard(f, 1);
  for (int bits = 0; bits < 512; ++bits) {
    Matrix x(f, 3, 3);
    for (int e = 0; e < 9; ++e) x(e / 3, e % 3) = static_cast<Elem>((bits >> e) & 1);
    const auto b = xi_to_form(s, x);  // the constructor validates
    EXPECT_EQ(b.dim(), 3);
  }
}

TEST(FormToXi, RoundTrip) {
  Rng rng(17);
  for (auto [p, k] : {std::pair{2, 1}, std::pair{3, 1}, std::pair{2, 2}}) {
    Field f = Field::create(p, k);
    for (int N : {1, 2}) {
      const auto s = QuadraticSpace::standard(f, N);
      const auto zero = AlternatingForm::zero(f, s.dim());
      EXPECT_TRUE(xi_to_form(s, form_to_xi(s, zero)) == zero);
      for (int t = 0; t < 20; ++t) {
        const auto lower = vec::random(f, s.dim() * (s.dim() - 1) / 2, rng);
        const auto b = AlternatingForm::from_lower(f, s.dim(), lower);
        EXPECT_TRUE(xi_to_form(s, form_to_xi(s, b)) == b);
      }
    }
  }
  Field f = Field::create(2, 1);
  const auto s = QuadraticSpace::standard(f, 1);
  const auto reg = AlternatingForm::elementary(f, 3, s.index(-1), s.index(0));
  EXPECT_TRUE(xi_to_form(s, form_to_xi(s, reg)) == reg);
}

TEST(XiToForm, ImageIsAllAlternatingForms) {
  // The image of X -> beta_X has dimension d(d-1)/2.
  for (int N : {1, 2}) {
    Field f = Field::create(2, 1);
    const auto s = QuadraticSpace::standard(f, N);
    const int d = s.dim();
    std::vector<Vec> images;
    for (int e = 0; e < d * d; ++e) {
      Matrix x(f, d, d);
      x(e / d, e % d) = 1;
      images.push_back(xi_to_form(s, x).lower());
    }
    EXPECT_EQ(rank_of(f, d * (d - 1) / 2, images), d * (d - 1) / 2);
  }
}

TEST(QNondegenerate, Examples) {
  Field f = Field::create(2, 1);
  const auto s = QuadraticSpace::standard(f, 1);
  EXPECT_TRUE(q_nondegenerate_on(s, Subspace(f, 3)));
  EXPECT_TRUE(q_nondegenerate_on(s, Subspace::span(f, 3, {vec::unit(3, s.index(0))})));
  EXPECT_FALSE(q_nondegenerate_on(s, Subspace::span(f, 3, {vec::unit(3, s.index(1))})));
  EXPECT_TRUE(q_nondegenerate_on(s, Subspace::whole(f, 3)));
  Field f3 = Field::create(3, 1);
  const auto t = QuadraticSpace::standard(f3, 1);
  EXPECT_FALSE(q_nondegenerate_on(t, Subspace::span(f3, 3, {vec::unit(3, t.index(1))})));
  EXPECT_TRUE(q_nondegenerate_on(t, Subspace::span(f3, 3, {vec::unit(3, t.index(0))})));
}

TEST(AlternatingForm, Validation) {
  Field f = Field::create(3, 1);
  Matrix m(f, 2, 2);
  m(0, 1) = 1;
  EXPECT_THROW(AlternatingForm{m}, ConstructionError);
  m(1, 0) = 2;
  EXPECT_NO_THROW(AlternatingForm{m});
  EXPECT_EQ(alternating_form_count(f, 3), 27u);
  const auto b = alternating_form_at(f, 3, 5);
  EXPECT_EQ(b.lower(), (std::vector<Elem>{2, 1, 0}));
}

TEST(SingularPart, SemilinearKernel) {
  Field f = Field::create(2, 2);
  const auto s = QuadraticSpace::standard(f, 1);
  // span{e_0, e_1}: beta vanishes there, Q(a e_0 + b e_1) = a^2.
  const Subspace u = Subspace::span(f, 3, {vec::unit(3, s.index(0)), vec::unit(3, s.index(1))});
  EXPECT_TRUE(s.singular_part(u) == Subspace::span(f, 3, {vec::unit(3, s.index(1))}));
  EXPECT_THROW(s.singular_part(Subspace::whole(f, 3)), InternalInvariantViolation);
}
