#include "nilpiece/linalg.hpp"

#include <algorithm>
#include <utility>

#include "nilpiece/errors.hpp"

namespace nilpiece {

namespace vec {

Vec zero(int n) { return Vec(static_cast<std::size_t>(n), 0); }

Vec unit(int n, int i) {
  Vec v = zero(n);
  v[i] = 1;
  return v;
}

Vec add(const Field& f, std::span<const Elem> a, std::span<const Elem> b) {
  if (a.size() != b.size()) throw DimensionMismatch("vector lengths differ");
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = f.add(a[i], b[i]);
  return r;
}

Vec sub(const Field& f, std::span<const Elem> a, std::span<const Elem> b) {
  if (a.size() != b.size()) throw DimensionMismatch("vector lengths differ");
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = f.sub(a[i], b[i]);
  return r;
}

Vec scale(const Field& f, Elem c, std::span<const Elem> a) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = f.mul(c, a[i]);
  return r;
}

void axpy(const Field& f, Vec& a, Elem c, std::span<const Elem> b) {
  if (a.size() != b.size()) throw DimensionMismatch("vector lengths differ");
  if (c == 0) return;
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = f.add(a[i], f.mul(c, b[i]));
}

bool is_zero(std::span<const Elem> a) {
  return std::all_of(a.begin(), a.end(), [](Elem x) { return x == 0; });
}

Vec random(const Field& f, int n, Rng& rng) {
  std::uniform_int_distribution<int> dist(0, f.order() - 1);
  Vec r(static_cast<std::size_t>(n));
  for (auto& x : r) x = static_cast<Elem>(dist(rng));
  return r;
}

}  // namespace vec

Matrix::Matrix(Field field, int rows, int cols)
    : field_(std::move(field)),
      rows_(rows),
      cols_(cols),
      data_(static_cast<std::size_t>(rows) * cols, 0) {
  if (rows < 0 || cols < 0) throw DimensionMismatch("negative matrix dimension");
}

Matrix Matrix::identity(const Field& field, int n) {
  Matrix m(field, n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(const Field& field, int cols, const std::vector<Vec>& rows) {
  Matrix m(field, static_cast<int>(rows.size()), cols);
  for (int r = 0; r < m.rows_; ++r) {
    if (static_cast<int>(rows[r].size()) != cols) throw DimensionMismatch("row length");
    std::copy(rows[r].begin(), rows[r].end(), m.data_.begin() + static_cast<std::ptrdiff_t>(r) * cols);
  }
  return m;
}

Matrix Matrix::from_columns(const Field& field, int rows, const std::vector<Vec>& cols) {
  Matrix m(field, rows, static_cast<int>(cols.size()));
  for (int c = 0; c < m.cols_; ++c) {
    if (static_cast<int>(cols[c].size()) != rows) throw DimensionMismatch("column length");
    for (int r = 0; r < rows; ++r) m(r, c) = cols[c][r];
  }
  return m;
}

Vec Matrix::row_vec(int r) const {
  auto s = row(r);
  return Vec(s.begin(), s.end());
}

Vec Matrix::column(int c) const {
  Vec v(static_cast<std::size_t>(rows_));
  for (int r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

std::vector<Vec> Matrix::row_list() const {
  std::vector<Vec> out;
  out.reserve(rows_);
  for (int r = 0; r < rows_; ++r) out.push_back(row_vec(r));
  return out;
}

void Matrix::check_field(const Matrix& o) const {
  if (!(field_ == o.field_)) throw FieldMismatch("matrices over different fields");
}

Matrix Matrix::transpose() const {
  Matrix t(field_, cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

Matrix Matrix::operator*(const Matrix& o) const {
  check_field(o);
  if (cols_ != o.rows_) throw DimensionMismatch("matrix product shapes");
  Matrix p(field_, rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const Elem a = (*this)(i, k);
      if (a == 0) continue;
      for (int j = 0; j < o.cols_; ++j)
        p(i, j) = field_.add(p(i, j), field_.mul(a, o(k, j)));
    }
  return p;
}

Matrix Matrix::operator+(const Matrix& o) const {
  check_field(o);
  if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("matrix sum shapes");
  Matrix s(field_, rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) s.data_[i] = field_.add(data_[i], o.data_[i]);
  return s;
}

Matrix Matrix::operator-(const Matrix& o) const {
  check_field(o);
  if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("matrix difference shapes");
  Matrix s(field_, rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) s.data_[i] = field_.sub(data_[i], o.data_[i]);
  return s;
}

Matrix Matrix::scaled(Elem c) const {
  Matrix s(field_, rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) s.data_[i] = field_.mul(c, data_[i]);
  return s;
}

Matrix Matrix::pow(int e) const {
  if (rows_ != cols_) throw DimensionMismatch("power of a non-square matrix");
  Matrix r = identity(field_, rows_);
  for (int i = 0; i < e; ++i) r = r * *this;
  return r;
}

Vec Matrix::apply(std::span<const Elem> x) const {
  if (static_cast<int>(x.size()) != cols_) throw DimensionMismatch("matrix-vector shapes");
  Vec y(static_cast<std::size_t>(rows_), 0);
  for (int r = 0; r < rows_; ++r) {
    Elem acc = 0;
    for (int c = 0; c < cols_; ++c) acc = field_.add(acc, field_.mul((*this)(r, c), x[c]));
    y[r] = acc;
  }
  return y;
}

Elem Matrix::bilinear(std::span<const Elem> x, std::span<const Elem> y) const {
  if (static_cast<int>(x.size()) != rows_ || static_cast<int>(y.size()) != cols_)
    throw DimensionMismatch("bilinear form shapes");
  Elem acc = 0;
  for (int r = 0; r < rows_; ++r) {
    if (x[r] == 0) continue;
    Elem inner = 0;
    for (int c = 0; c < cols_; ++c) inner = field_.add(inner, field_.mul((*this)(r, c), y[c]));
    acc = field_.add(acc, field_.mul(x[r], inner));
  }
  return acc;
}

Matrix Matrix::block(int r0, int nr, int c0, int nc) const {
  if (r0 < 0 || c0 < 0 || r0 + nr > rows_ || c0 + nc > cols_)
    throw DimensionMismatch("block out of range");
  Matrix b(field_, nr, nc);
  for (int r = 0; r < nr; ++r)
    for (int c = 0; c < nc; ++c) b(r, c) = (*this)(r0 + r, c0 + c);
  return b;
}

Matrix Matrix::with_row_appended(std::span<const Elem> r) const {
  if (static_cast<int>(r.size()) != cols_) throw DimensionMismatch("appended row length");
  Matrix m(field_, rows_ + 1, cols_);
  std::copy(data_.begin(), data_.end(), m.data_.begin());
  std::copy(r.begin(), r.end(), m.data_.begin() + static_cast<std::ptrdiff_t>(rows_) * cols_);
  return m;
}

Matrix Matrix::stacked(const Matrix& o) const {
  check_field(o);
  if (cols_ != o.cols_) throw DimensionMismatch("stacked column counts");
  Matrix m(field_, rows_ + o.rows_, cols_);
  std::copy(data_.begin(), data_.end(), m.data_.begin());
  std::copy(o.data_.begin(), o.data_.end(), m.data_.begin() + static_cast<std::ptrdiff_t>(data_.size()));
  return m;
}

bool Matrix::is_zero() const { return vec::is_zero(data_); }

bool Matrix::operator==(const Matrix& o) const {
  return field_ == o.field_ && rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

RrefResult rref(const Matrix& m) {
  const Field& f = m.field();
  Matrix a = m;
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < a.cols() && r < a.rows(); ++c) {
    int p = r;
    while (p < a.rows() && a(p, c) == 0) ++p;
    if (p == a.rows()) continue;
    if (p != r)
      for (int j = 0; j < a.cols(); ++j) std::swap(a(p, j), a(r, j));
    const Elem inv = f.inv(a(r, c));
    for (int j = 0; j < a.cols(); ++j) a(r, j) = f.mul(inv, a(r, j));
    for (int i = 0; i < a.rows(); ++i) {
      if (i == r || a(i, c) == 0) continue;
      const Elem factor = a(i, c);
      for (int j = 0; j < a.cols(); ++j) a(i, j) = f.sub(a(i, j), f.mul(factor, a(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(a), r, std::move(pivots)};
}

int rank(const Matrix& m) { return rref(m).rank; }

int rank_of(const Field& f, int n, const std::vector<Vec>& vectors) {
  if (vectors.empty()) return 0;
  return rank(Matrix::from_rows(f, n, vectors));
}

Matrix kernel_basis(const Matrix& m) {
  const Field& f = m.field();
  const auto red = rref(m);
  std::vector<bool> is_pivot(static_cast<std::size_t>(m.cols()), false);
  for (int c : red.pivots) is_pivot[c] = true;
  std::vector<Vec> basis;
  for (int free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vec x = vec::unit(m.cols(), free);
    for (int i = 0; i < red.rank; ++i) x[red.pivots[i]] = f.neg(red.reduced(i, free));
    basis.push_back(std::move(x));
  }
  return Matrix::from_rows(f, m.cols(), basis);
}

std::optional<Vec> solve(const Matrix& m, std::span<const Elem> b) {
  if (static_cast<int>(b.size()) != m.rows()) throw DimensionMismatch("right-hand side length");
  const Field& f = m.field();
  Matrix aug(f, m.rows(), m.cols() + 1);
  for (int r = 0; r < m.rows(); ++r) {
    for (int c = 0; c < m.cols(); ++c) aug(r, c) = m(r, c);
    aug(r, m.cols()) = b[r];
  }
  const auto red = rref(aug);
  if (!red.pivots.empty() && red.pivots.back() == m.cols()) return std::nullopt;
  Vec x = vec::zero(m.cols());
  for (int i = 0; i < red.rank; ++i) x[red.pivots[i]] = red.reduced(i, m.cols());
  return x;
}

std::optional<Matrix> inverse(const Matrix& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("inverse of a non-square matrix");
  const int n = m.rows();
  Matrix aug(m.field(), n, 2 * n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) aug(r, c) = m(r, c);
    aug(r, n + r) = 1;
  }
  const auto red = rref(aug);
  if (red.rank < n || red.pivots[n - 1] != n - 1) return std::nullopt;
  return red.reduced.block(0, n, n, n);
}

Elem determinant(const Matrix& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("determinant of a non-square matrix");
  const Field& f = m.field();
  Matrix a = m;
  const int n = m.rows();
  Elem det = 1;
  for (int c = 0; c < n; ++c) {
    int p = c;
    while (p < n && a(p, c) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      for (int j = 0; j < n; ++j) std::swap(a(p, j), a(c, j));
      det = f.neg(det);
    }
    det = f.mul(det, a(c, c));
    const Elem inv = f.inv(a(c, c));
    for (int i = c + 1; i < n; ++i) {
      if (a(i, c) == 0) continue;
      const Elem factor = f.mul(a(i, c), inv);
      for (int j = c; j < n; ++j) a(i, j) = f.sub(a(i, j), f.mul(factor, a(c, j)));
    }
  }
  return det;
}

// --- Subspace ---------------------------------------------------------------

Subspace::Subspace(Field field, int ambient) : basis_(std::move(field), 0, ambient) {}

Subspace Subspace::whole(const Field& field, int n) { return Subspace(Matrix::identity(field, n)); }

Subspace Subspace::span(const Matrix& m) {
  auto red = rref(m);
  return Subspace(red.reduced.block(0, red.rank, 0, m.cols()));
}

Subspace Subspace::span(const Field& field, int n, const std::vector<Vec>& vectors) {
  return span(Matrix::from_rows(field, n, vectors));
}

void Subspace::check_ambient(const Subspace& o) const {
  if (ambient_dim() != o.ambient_dim()) throw DimensionMismatch("subspaces of different ambient spaces");
  if (!(field() == o.field())) throw FieldMismatch("subspaces over different fields");
}

bool Subspace::contains(std::span<const Elem> v) const {
  if (static_cast<int>(v.size()) != ambient_dim()) throw DimensionMismatch("vector length");
  if (vec::is_zero(v)) return true;
  return rank(basis_.with_row_appended(v)) == dim();
}

bool Subspace::contains(const Subspace& o) const {
  check_ambient(o);
  return rank(basis_.stacked(o.basis_)) == dim();
}

Subspace Subspace::operator+(const Subspace& o) const {
  check_ambient(o);
  return span(basis_.stacked(o.basis_));
}

Subspace Subspace::intersect(const Subspace& o) const {
  check_ambient(o);
  // U ∩ W = ann(ann U + ann W), with ann taken under the dot product.
  const Matrix ann_u = kernel_basis(basis_);
  const Matrix ann_w = kernel_basis(o.basis_);
  return span(kernel_basis(ann_u.stacked(ann_w)));
}

Subspace Subspace::image(const Matrix& m) const {
  if (m.cols() != ambient_dim()) throw DimensionMismatch("map domain differs from ambient");
  return span((m * basis_.transpose()).transpose());
}

Vec Subspace::coordinates(std::span<const Elem> v) const {
  auto x = solve(basis_.transpose(), v);
  if (!x) throw ContainmentViolation("vector is not in the subspace");
  return *x;
}

bool Subspace::operator==(const Subspace& o) const {
  return ambient_dim() == o.ambient_dim() && basis_ == o.basis_;
}

SubspaceOpResult subspace_ops(const Subspace& u, const Subspace& w, SubspaceOp op) {
  switch (op) {
    case SubspaceOp::sum: return {u + w, std::nullopt};
    case SubspaceOp::intersect: return {u.intersect(w), std::nullopt};
    case SubspaceOp::contains: return {std::nullopt, u.contains(w)};
    case SubspaceOp::equals:
      if (u.ambient_dim() != w.ambient_dim()) throw DimensionMismatch("subspaces of different ambient spaces");
      return {std::nullopt, u == w};
  }
  throw InternalInvariantViolation("unknown subspace operation");
}

Subspace perp(const Subspace& u, const Matrix& form) {
  if (form.rows() != u.ambient_dim() || form.cols() != u.ambient_dim())
    throw DimensionMismatch("form does not match the ambient space");
  if (u.is_zero()) return Subspace::whole(u.field(), u.ambient_dim());
  // v with v^T F u_i = 0 for all i  <=>  (U F^T) v = 0.
  return Subspace::span(kernel_basis(u.basis() * form.transpose()));
}

Subspace kernel_within(const Matrix& m, const Subspace& domain) {
  if (m.cols() != domain.ambient_dim()) throw DimensionMismatch("map domain differs from ambient");
  if (domain.is_zero()) return domain;
  // x = c^T D with M D^T c = 0.
  const Matrix coeffs = kernel_basis(m * domain.basis().transpose());
  if (coeffs.rows() == 0) return Subspace(domain.field(), domain.ambient_dim());
  return Subspace::span(coeffs * domain.basis());
}

Subspace complement(const Subspace& u, const Subspace& inside) {
  if (!inside.contains(u)) throw ContainmentViolation("subspace is not contained in `inside`");
  std::vector<Vec> picked;
  Matrix current = u.basis();
  int r = u.dim();
  for (int i = 0; i < inside.dim() && r < inside.dim(); ++i) {
    Matrix trial = current.with_row_appended(inside.basis().row(i));
    const int tr = rank(trial);
    if (tr > r) {
      picked.push_back(inside.basis_vector(i));
      current = std::move(trial);
      r = tr;
    }
  }
  return Subspace::span(u.field(), u.ambient_dim(), picked);
}

Subspace complement(const Subspace& u, const Subspace& inside, Rng& rng) {
  const Subspace c = complement(u, inside);
  std::vector<Vec> shifted;
  for (int i = 0; i < c.dim(); ++i) {
    Vec v = c.basis_vector(i);
    if (!u.is_zero()) {
      const Vec coeff = vec::random(u.field(), u.dim(), rng);
      for (int j = 0; j < u.dim(); ++j) vec::axpy(u.field(), v, coeff[j], u.basis().row(j));
    }
    shifted.push_back(std::move(v));
  }
  return Subspace::span(u.field(), u.ambient_dim(), shifted);
}

// --- QuotientMap --------------------------------------------------------------

QuotientMap::QuotientMap(const Subspace& ambient, const Subspace& sub)
    : ambient_(ambient), sub_(sub), section_(complement(sub, ambient).basis()), frame_(section_) {
  build();
}

QuotientMap::QuotientMap(const Subspace& ambient, const Subspace& sub, Rng& rng)
    : ambient_(ambient), sub_(sub), section_(complement(sub, ambient, rng).basis()), frame_(section_) {
  build();
}

QuotientMap::QuotientMap(const Subspace& ambient, const Subspace& sub, Matrix section)
    : ambient_(ambient), sub_(sub), section_(std::move(section)), frame_(section_) {
  build();
}

void QuotientMap::build() {
  if (!ambient_.contains(sub_)) throw ContainmentViolation("quotient by a subspace not contained in the ambient");
  frame_ = section_.stacked(sub_.basis());
  if (rank(frame_) != ambient_.dim() || frame_.rows() != ambient_.dim() ||
      !ambient_.contains(Subspace::span(section_)))
    throw ContainmentViolation("section is not a complement of the subspace");
}

Vec QuotientMap::project(std::span<const Elem> v) const {
  auto c = solve(frame_.transpose(), v);
  if (!c) throw ContainmentViolation("vector is not in the quotient's ambient subspace");
  c->resize(static_cast<std::size_t>(dim()));
  return *c;
}

Vec QuotientMap::lift(std::span<const Elem> coords) const {
  if (static_cast<int>(coords.size()) != dim()) throw DimensionMismatch("quotient coordinate length");
  Vec v = vec::zero(ambient_.ambient_dim());
  for (int i = 0; i < dim(); ++i) vec::axpy(ambient_.field(), v, coords[i], section_.row(i));
  return v;
}

Subspace QuotientMap::lift(const Subspace& s) const {
  if (s.ambient_dim() != dim()) throw DimensionMismatch("subspace is not in the quotient");
  std::vector<Vec> gens;
  for (int i = 0; i < s.dim(); ++i) gens.push_back(lift(s.basis().row(i)));
  return Subspace::span(ambient_.field(), ambient_.ambient_dim(), gens) + sub_;
}

Subspace QuotientMap::project(const Subspace& s) const {
  std::vector<Vec> gens;
  for (int i = 0; i < s.dim(); ++i) gens.push_back(project(s.basis().row(i)));
  return Subspace::span(ambient_.field(), dim(), gens);
}

Matrix QuotientMap::descend_form(const Matrix& form) const {
  const Matrix amb = ambient_.basis();
  const Matrix l = sub_.basis();
  if (!(l * form * amb.transpose()).is_zero() || !(amb * form * l.transpose()).is_zero())
    throw NotWellDefined("form does not vanish on the subspace");
  return section_ * form * section_.transpose();
}

std::vector<Subspace> enumerate_subspaces(const Field& field, int n, int dim) {
  // Every subspace has a unique RREF basis: choose pivot columns, then fill
  // the non-pivot entries to the right of each pivot freely.
  std::vector<Subspace> out;
  if (dim < 0 || dim > n) return out;
  if (dim == 0) {
    out.emplace_back(field, n);
    return out;
  }
  const int q = field.order();
  std::vector<int> piv(dim);
  for (int i = 0; i < dim; ++i) piv[i] = i;
  while (true) {
    std::vector<std::pair<int, int>> free_slots;
    for (int r = 0; r < dim; ++r)
      for (int c = piv[r] + 1; c < n; ++c)
        if (std::find(piv.begin(), piv.end(), c) == piv.end()) free_slots.emplace_back(r, c);
    std::vector<int> digits(free_slots.size(), 0);
    while (true) {
      Matrix m(field, dim, n);
      for (int r = 0; r < dim; ++r) m(r, piv[r]) = 1;
      for (std::size_t s = 0; s < free_slots.size(); ++s)
        m(free_slots[s].first, free_slots[s].second) = static_cast<Elem>(digits[s]);
      out.push_back(Subspace::span(m));
      std::size_t s = 0;
      while (s < digits.size() && ++digits[s] == q) digits[s++] = 0;
      if (s == digits.size()) break;
    }
    int i = dim - 1;
    while (i >= 0 && piv[i] == n - dim + i) --i;
    if (i < 0) break;
    ++piv[i];
    for (int j = i + 1; j < dim; ++j) piv[j] = piv[j - 1] + 1;
  }
  return out;
}

}  // namespace nilpiece
