#include "nilpiece/quadspace.hpp"

#include "nilpiece/errors.hpp"

namespace nilpiece {

QuadraticSpace::QuadraticSpace(Matrix upper, int N)
    : upper_(std::move(upper)),
      polar_(upper_.field(), upper_.rows(), upper_.rows()),
      radical_(upper_.field(), upper_.rows()),
      N_(N) {
  for (int i = 0; i < dim(); ++i)
    for (int j = 0; j < i; ++j) upper_(i, j) = 0;
  polar_ = upper_ + upper_.transpose();
  radical_ = Subspace::span(kernel_basis(polar_));
}

QuadraticSpace QuadraticSpace::standard(const Field& field, int N) {
  if (N < 1) throw ConstructionError("rank must be at least 1");
  const int d = 2 * N + 1;
  Matrix u(field, d, d);
  for (int i = 1; i <= N; ++i) u(N - i, N + i) = 1;
  u(N, N) = 1;
  return QuadraticSpace(std::move(u), N);
}

QuadraticSpace QuadraticSpace::from_upper(const Matrix& upper) {
  if (upper.rows() != upper.cols()) throw DimensionMismatch("Gram matrix must be square");
  return QuadraticSpace(upper, -1);
}

Elem QuadraticSpace::q(std::span<const Elem> v) const {
  if (static_cast<int>(v.size()) != dim()) throw DimensionMismatch("vector length");
  const Field& f = field();
  Elem acc = 0;
  for (int i = 0; i < dim(); ++i) {
    if (v[i] == 0) continue;
    Elem row = 0;
    for (int j = i; j < dim(); ++j) row = f.add(row, f.mul(upper_(i, j), v[j]));
    acc = f.add(acc, f.mul(v[i], row));
  }
  return acc;
}

std::optional<Vec> QuadraticSpace::solve_beta(std::span<const Elem> phi) const {
  return solve(polar_.transpose(), phi);
}

Vec QuadraticSpace::normalized_radical() const {
  if (field().characteristic() != 2) throw CharacteristicError("radical vector requested in odd characteristic");
  if (radical_.dim() != 1) throw InternalInvariantViolation("radical is not a line");
  Vec r = radical_.basis_vector(0);
  const Elem qr = q(r);
  if (qr == 0) throw InternalInvariantViolation("Q vanishes on the radical");
  return vec::scale(field(), field().inv(field().sqrt_char2(qr)), r);
}

Subspace QuadraticSpace::singular_part(const Subspace& u) const {
  if (!beta_vanishes_on(u, u)) throw InternalInvariantViolation("beta does not vanish on the subspace");
  if (field().characteristic() != 2 || u.is_zero()) return u;
  const Field& f = field();
  Matrix functional(f, 1, u.dim());
  for (int i = 0; i < u.dim(); ++i) functional(0, i) = f.sqrt_char2(q(u.basis().row(i)));
  const Matrix coeffs = kernel_basis(functional);
  if (coeffs.rows() == 0) return Subspace(f, dim());
  return Subspace::span(coeffs * u.basis());
}

QuadraticSpace QuadraticSpace::restricted(const Matrix& rows) const {
  const int r = rows.rows();
  Matrix u(field(), r, r);
  for (int k = 0; k < r; ++k) {
    u(k, k) = q(rows.row(k));
    for (int l = k + 1; l < r; ++l) u(k, l) = beta(rows.row(k), rows.row(l));
  }
  return QuadraticSpace(std::move(u), -1);
}

bool QuadraticSpace::q_vanishes_on(const Subspace& u) const {
  for (int i = 0; i < u.dim(); ++i) {
    if (q(u.basis().row(i)) != 0) return false;
    for (int j = i + 1; j < u.dim(); ++j)
      if (beta(u.basis().row(i), u.basis().row(j)) != 0) return false;
  }
  return true;
}

bool QuadraticSpace::beta_vanishes_on(const Subspace& u, const Subspace& w) const {
  if (u.is_zero() || w.is_zero()) return true;
  return (u.basis() * polar_ * w.basis().transpose()).is_zero();
}

// --- AlternatingForm --------------------------------------------------------

AlternatingForm::AlternatingForm(Matrix gram) : gram_(std::move(gram)) {
  if (gram_.rows() != gram_.cols()) throw DimensionMismatch("form must be square");
  const Field& f = gram_.field();
  for (int i = 0; i < gram_.rows(); ++i) {
    if (gram_(i, i) != 0) throw ConstructionError("alternating form has nonzero diagonal");
    for (int j = 0; j < i; ++j)
      if (gram_(i, j) != f.neg(gram_(j, i))) throw ConstructionError("form is not antisymmetric");
  }
}

AlternatingForm AlternatingForm::zero(const Field& field, int dim) {
  return AlternatingForm(Matrix(field, dim, dim));
}

AlternatingForm AlternatingForm::elementary(const Field& field, int dim, int i, int j, Elem c) {
  if (i == j) throw ConstructionError("elementary alternating form needs i != j");
  Matrix m(field, dim, dim);
  m(i, j) = c;
  m(j, i) = field.neg(c);
  return AlternatingForm(std::move(m));
}

AlternatingForm AlternatingForm::from_lower(const Field& field, int dim, std::span<const Elem> lower) {
  if (static_cast<int>(lower.size()) != dim * (dim - 1) / 2)
    throw DimensionMismatch("lower-triangle entry count");
  Matrix m(field, dim, dim);
  std::size_t t = 0;
  for (int i = 1; i < dim; ++i)
    for (int j = 0; j < i; ++j) {
      if (lower[t] >= field.order()) throw ConstructionError("form entry out of range");
      m(i, j) = lower[t];
      m(j, i) = field.neg(lower[t]);
      ++t;
    }
  return AlternatingForm(std::move(m));
}

std::vector<Elem> AlternatingForm::lower() const {
  std::vector<Elem> out;
  for (int i = 1; i < dim(); ++i)
    for (int j = 0; j < i; ++j) out.push_back(gram_(i, j));
  return out;
}

AlternatingForm AlternatingForm::restricted(const Matrix& rows) const {
  return AlternatingForm(rows * gram_ * rows.transpose());
}

AlternatingForm xi_to_form(const QuadraticSpace& space, const Matrix& x) {
  if (x.rows() != space.dim() || x.cols() != space.dim()) throw DimensionMismatch("endomorphism shape");
  const Matrix& g = space.polar();
  return AlternatingForm(x.transpose() * g - g * x);
}

Matrix form_to_xi(const QuadraticSpace& space, const AlternatingForm& b) {
  const int d = space.dim();
  if (b.dim() != d) throw DimensionMismatch("form does not match the space");
  const Field& f = space.field();
  const Matrix& g = space.polar();
  // B_ij = sum_k X_ki G_kj - sum_k G_ik X_kj for i > j; X_ab is unknown a*d+b.
  Matrix sys(f, d * (d - 1) / 2, d * d);
  Vec rhs;
  int row = 0;
  for (int i = 1; i < d; ++i)
    for (int j = 0; j < i; ++j) {
      for (int k = 0; k < d; ++k) {
        sys(row, k * d + i) = f.add(sys(row, k * d + i), g(k, j));
        sys(row, k * d + j) = f.sub(sys(row, k * d + j), g(i, k));
      }
      rhs.push_back(b.gram()(i, j));
      ++row;
    }
  auto sol = solve(sys, rhs);
  if (!sol) throw InternalInvariantViolation("alternating form outside the image of xi_to_form");
  Matrix x(f, d, d);
  for (int a = 0; a < d; ++a)
    for (int c = 0; c < d; ++c) x(a, c) = (*sol)[static_cast<std::size_t>(a) * d + c];
  return x;
}

bool q_nondegenerate_on(const QuadraticSpace& space, const Subspace& u) {
  if (u.is_zero()) return true;
  const Subspace rad = kernel_within(u.basis() * space.polar(), u);
  if (rad.is_zero()) return true;
  if (space.field().characteristic() != 2) return false;
  return space.singular_part(rad).is_zero();
}

bool is_good_basis(const QuadraticSpace& space, const Matrix& rows) {
  if (!space.is_standard() || rows.rows() != space.dim() || rows.cols() != space.dim()) return false;
  if (rank(rows) != space.dim()) return false;
  const int N = space.rank_param();
  for (int a = 0; a < space.dim(); ++a) {
    const int i = a - N;
    if (space.q(rows.row(a)) != (i == 0 ? 1 : 0)) return false;
    for (int c = 0; c < space.dim(); ++c) {
      const int j = c - N;
      const int expect = (i + j == 0 ? 1 : 0) + (i == 0 && j == 0 ? 1 : 0);
      if (space.beta(rows.row(a), rows.row(c)) != space.field().from_int(expect)) return false;
    }
  }
  return true;
}

std::uint64_t alternating_form_count(const Field& field, int dim) {
  std::uint64_t n = 1;
  const int slots = dim * (dim - 1) / 2;
  for (int i = 0; i < slots; ++i) {
    if (n > (std::uint64_t{1} << 40) / static_cast<std::uint64_t>(field.order()))
      throw SizeError("too many alternating forms to enumerate");
    n *= static_cast<std::uint64_t>(field.order());
  }
  return n;
}

AlternatingForm alternating_form_at(const Field& field, int dim, std::uint64_t index) {
  const int slots = dim * (dim - 1) / 2;
  std::vector<Elem> lower(static_cast<std::size_t>(slots));
  const auto q = static_cast<std::uint64_t>(field.order());
  for (int t = 0; t < slots; ++t) {
    lower[t] = static_cast<Elem>(index % q);
    index /= q;
  }
  return AlternatingForm::from_lower(field, dim, lower);
}

}  // namespace nilpiece
