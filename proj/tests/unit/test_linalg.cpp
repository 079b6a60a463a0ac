#include <gtest/gtest.h>

#include "nilpiece/errors.hpp"
#include "nilpiece/linalg.hpp"
#include "nilpiece/quadspace.hpp"

using namespace nilpiece;

namespace {

Matrix mat(const Field& f, std::vector<Vec> rows) {
  const int cols = rows.empty() ? 0 : static_cast<int>(rows[0].size());
  return Matrix::from_rows(f, cols, rows);
}

Subspace random_subspace(const Field& f, int n, int gens, Rng& rng) {
  std::vector<Vec> v;
  for (int i = 0; i < gens; ++i) v.push_back(vec::random(f, n, rng));
  return Subspace::span(f, n, v);
}

}  // namespace

TEST(Rref, Examples) {
  Field f2 = Field::create(2, 1), f3 = Field::create(3, 1);
  EXPECT_EQ(rref(mat(f2, {{1, 1}, {1, 1}})).rank, 1);
  const Matrix id = Matrix::identity(f3, 4);
  auto r = rref(id);
  EXPECT_EQ(r.rank, 4);
  EXPECT_TRUE(r.reduced == id);
  // 2*[1,2] = [2,1] mod 3, so the rows are dependent.
  EXPECT_EQ(rref(mat(f3, {{1, 2}, {2, 1}})).rank, 1);
}

TEST(Rref, RankOfTransposeAndKernel) {
  Rng rng(7);
  for (int p : {2, 3}) {
    Field f = Field::create(p, p == 2 ? 2 : 1);
    for (int t = 0; t < 50; ++t) {
      const int r = 1 + t % 5, c = 1 + (t / 5) % 6;
      Matrix m(f, r, c);
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) m(i, j) = vec::random(f, 1, rng)[0];
      EXPECT_EQ(rank(m), rank(m.transpose()));
      const Matrix k = kernel_basis(m);
      EXPECT_EQ(k.rows(), c - rank(m));
      if (k.rows() > 0) EXPECT_TRUE((m * k.transpose()).is_zero());
    }
  }
}

TEST(Solve, Examples) {
  Field f2 = Field::create(2, 1);
  Field f5 = Field::create(5, 1);
  const Vec b{3, 1, 4};
  EXPECT_EQ(*solve(Matrix::identity(f5, 3), b), b);
  EXPECT_FALSE(solve(Matrix(f2, 2, 2), Vec{1, 0}).has_value());
  EXPECT_EQ(*solve(mat(f2, {{1, 1}}), Vec{1}), (Vec{1, 0}));
}

TEST(Solve, InverseAndDeterminant) {
  Field f = Field::create(3, 1);
  const Matrix m = mat(f, {{1, 2, 0}, {0, 1, 1}, {1, 0, 2}});
  const auto inv = inverse(m);
  ASSERT_TRUE(inv.has_value());
  EXPECT_TRUE(m * *inv == Matrix::identity(f, 3));
  EXPECT_NE(determinant(m), 0);
  EXPECT_FALSE(inverse(mat(f, {{1, 2}, {2, 1}})).has_value());
  EXPECT_EQ(determinant(mat(f, {{1, 2}, {2, 1}})), 0);
  EXPECT_EQ(determinant(mat(f, {{0, 1}, {1, 0}})), 2);
}

TEST(SubspaceOps, Examples) {
  Field f = Field::create(2, 1);
  const Subspace u = Subspace::span(f, 3, {vec::unit(3, 0), vec::unit(3, 1)});
  const Subspace w = Subspace::span(f, 3, {vec::unit(3, 1), vec::unit(3, 2)});
  const Subspace zero(f, 3);
  EXPECT_TRUE(*subspace_ops(u, zero, SubspaceOp::sum).space == u);
  EXPECT_TRUE(*subspace_ops(u, u, SubspaceOp::intersect).space == u);
  EXPECT_TRUE(*subspace_ops(u, w, SubspaceOp::intersect).space == Subspace::span(f, 3, {vec::unit(3, 1)}));
  EXPECT_TRUE(*subspace_ops(u, zero, SubspaceOp::contains).truth);
  EXPECT_FALSE(*subspace_ops(u, w, SubspaceOp::equals).truth);
  EXPECT_THROW(u + Subspace(f, 4), DimensionMismatch);
}

TEST(SubspaceOps, CanonicalStorage) {
  Field f = Field::create(3, 1);
  const Subspace a = Subspace::span(f, 3, {{1, 1, 0}, {0, 1, 2}});
  const Subspace b = Subspace::span(f, 3, {{1, 2, 2}, {2, 0, 2}, {1, 1, 0}});
  EXPECT_TRUE(a == b);
  EXPECT_EQ(a.basis().data(), b.basis().data());
}

TEST(Perp, Examples) {
  Field f2 = Field::create(2, 1);
  const auto space = QuadraticSpace::standard(f2, 1);
  const Subspace whole = Subspace::whole(f2, 3);
  EXPECT_TRUE(perp(Subspace(f2, 3), space.polar()) == whole);
  EXPECT_TRUE(perp(Subspace::span(f2, 3, {vec::unit(3, 1)}), space.polar()) == whole);
  Field f3 = Field::create(3, 1);
  const auto odd = QuadraticSpace::standard(f3, 1);
  EXPECT_TRUE(perp(Subspace::whole(f3, 3), odd.polar()).is_zero());
}

TEST(Perp, DoublePerpIsSumWithRadical) {
  Rng rng(11);
  for (auto [p, k] : {std::pair{2, 1}, std::pair{2, 2}, std::pair{3, 1}}) {
    Field f = Field::create(p, k);
    for (int N : {1, 2, 3}) {
      const auto space = QuadraticSpace::standard(f, N);
      const int d = space.dim();
      for (int t = 0; t < 30; ++t) {
        const Subspace u = random_subspace(f, d, t % (d + 1), rng);
        const Subspace pp = perp(perp(u, space.polar()), space.polar());
        EXPECT_TRUE(pp == u + space.radical());
      }
    }
  }
}

TEST(Complement, Examples) {
  Field f = Field::create(2, 1);
  const Subspace whole = Subspace::whole(f, 3);
  EXPECT_TRUE(complement(whole, whole).is_zero());
  EXPECT_TRUE(complement(Subspace(f, 3), whole) == whole);
  const Subspace u = Subspace::span(f, 3, {{1, 1, 0}});
  EXPECT_TRUE(complement(u, whole) == Subspace::span(f, 3, {vec::unit(3, 0), vec::unit(3, 2)}));
  EXPECT_THROW(complement(whole, u), ContainmentViolation);
}

TEST(Complement, AlwaysComplementary) {
  Rng rng(5);
  Field f = Field::create(2, 2);
  for (int t = 0; t < 100; ++t) {
    const Subspace inside = random_subspace(f, 6, 1 + t % 6, rng);
    std::vector<Vec> gens;
    for (int i = 0; i < t % 3; ++i) {
      Vec v = vec::zero(6);
      const Vec c = vec::random(f, inside.dim(), rng);
      for (int j = 0; j < inside.dim(); ++j) vec::axpy(f, v, c[j], inside.basis().row(j));
      gens.push_back(v);
    }
    const Subspace u = gens.empty() ? Subspace(f, 6) : Subspace::span(f, 6, gens);
    for (const Subspace& c : {complement(u, inside), complement(u, inside, rng)}) {
      EXPECT_TRUE(c.intersect(u).is_zero());
      EXPECT_TRUE(c + u == inside);
    }
  }
}

TEST(Quotient, Examples) {
  Field f = Field::create(2, 1);
  const Subspace whole = Subspace::whole(f, 3);
  QuotientMap id(whole, Subspace(f, 3));
  EXPECT_EQ(id.dim(), 3);
  EXPECT_TRUE(id.section() == Matrix::identity(f, 3));
  QuotientMap q(whole, Subspace::span(f, 3, {vec::unit(3, 1)}));
  EXPECT_EQ(q.dim(), 2);
  for (int i = 0; i < 2; ++i) EXPECT_EQ(q.project(q.lift(vec::unit(2, i))), vec::unit(2, i));
  const auto form = AlternatingForm::elementary(f, 3, 0, 1).gram();
  EXPECT_THROW(q.descend_form(form), NotWellDefined);
  const auto ok = AlternatingForm::elementary(f, 3, 0, 2).gram();
  EXPECT_EQ(q.descend_form(ok).rows(), 2);
}

TEST(Quotient, ProjectionSectionIdentity) {
  Rng rng(3);
  Field f = Field::create(3, 1);
  for (int t = 0; t < 40; ++t) {
    const Subspace amb = random_subspace(f, 5, 2 + t % 4, rng);
    const Subspace sub = amb.intersect(random_subspace(f, 5, 3, rng));
    QuotientMap q(amb, sub, rng);
    EXPECT_EQ(q.dim(), amb.dim() - sub.dim());
    for (int i = 0; i < q.dim(); ++i) EXPECT_EQ(q.project(q.lift(vec::unit(q.dim(), i))), vec::unit(q.dim(), i));
    EXPECT_TRUE(q.lift(Subspace(f, q.dim())) == sub);
    EXPECT_TRUE(q.lift(Subspace::whole(f, q.dim())) == amb);
  }
}

TEST(EnumerateSubspaces, GaussianBinomials) {
  Field f2 = Field::create(2, 1);
  EXPECT_EQ(enumerate_subspaces(f2, 3, 1).size(), 7u);
  EXPECT_EQ(enumerate_subspaces(f2, 4, 2).size(), 35u);
  Field f3 = Field::create(3, 1);
  EXPECT_EQ(enumerate_subspaces(f3, 3, 2).size(), 13u);
  EXPECT_EQ(enumerate_subspaces(f3, 3, 0).size(), 1u);
}
