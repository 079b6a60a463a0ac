#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "nilpiece/field.hpp"

namespace nilpiece {

using Vec = std::vector<Elem>;
using Rng = std::mt19937_64;

namespace vec {
Vec zero(int n);
Vec unit(int n, int i);
Vec add(const Field& f, std::span<const Elem> a, std::span<const Elem> b);
Vec sub(const Field& f, std::span<const Elem> a, std::span<const Elem> b);
Vec scale(const Field& f, Elem c, std::span<const Elem> a);
/// a += c * b
void axpy(const Field& f, Vec& a, Elem c, std::span<const Elem> b);
bool is_zero(std::span<const Elem> a);
Vec random(const Field& f, int n, Rng& rng);
}  // namespace vec

/// Dense matrix over a Field, row-major. Linear maps act on column vectors:
/// y = M x.
class Matrix {
 public:
  Matrix(Field field, int rows, int cols);
  static Matrix identity(const Field& field, int n);
  /// Matrix whose rows are the given vectors (all of length `cols`).
  static Matrix from_rows(const Field& field, int cols, const std::vector<Vec>& rows);
  /// Matrix whose columns are the given vectors (all of length `rows`).
  static Matrix from_columns(const Field& field, int rows, const std::vector<Vec>& cols);

  const Field& field() const { return field_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Elem operator()(int r, int c) const { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
  Elem& operator()(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }

  std::span<const Elem> row(int r) const {
    return {data_.data() + static_cast<std::size_t>(r) * cols_, static_cast<std::size_t>(cols_)};
  }
  Vec row_vec(int r) const;
  Vec column(int c) const;
  std::vector<Vec> row_list() const;

  Matrix transpose() const;
  Matrix operator*(const Matrix& o) const;
  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix scaled(Elem c) const;
  Matrix pow(int e) const;
  /// M x
  Vec apply(std::span<const Elem> x) const;
  /// x^T M y
  Elem bilinear(std::span<const Elem> x, std::span<const Elem> y) const;

  /// Rows [r0, r0+nr) and columns [c0, c0+nc).
  Matrix block(int r0, int nr, int c0, int nc) const;
  Matrix with_row_appended(std::span<const Elem> r) const;
  /// Rows of this followed by rows of o.
  Matrix stacked(const Matrix& o) const;

  bool is_zero() const;
  bool operator==(const Matrix& o) const;
  bool operator<(const Matrix& o) const { return data_ < o.data_; }

  const std::vector<Elem>& data() const { return data_; }

 private:
  void check_field(const Matrix& o) const;

  Field field_;
  int rows_;
  int cols_;
  std::vector<Elem> data_;
};

struct RrefResult {
  Matrix reduced;
  int rank;
  std::vector<int> pivots;
};

/// Reduced row echelon form by Gauss-Jordan elimination.
RrefResult rref(const Matrix& m);
int rank(const Matrix& m);
int rank_of(const Field& f, int n, const std::vector<Vec>& vectors);

/// Basis (as rows) of {x : M x = 0}; free variables run in column order.
Matrix kernel_basis(const Matrix& m);

/// One solution of M x = b with free variables set to zero, or nullopt.
std::optional<Vec> solve(const Matrix& m, std::span<const Elem> b);

std::optional<Matrix> inverse(const Matrix& m);
Elem determinant(const Matrix& m);

/// A subspace of k^n stored by its canonical RREF basis, so that equal
/// subspaces have identical stored bases.
class Subspace {
 public:
  /// The zero subspace of k^n.
  Subspace(Field field, int ambient);
  static Subspace whole(const Field& field, int n);
  /// Row span of m.
  static Subspace span(const Matrix& m);
  static Subspace span(const Field& field, int n, const std::vector<Vec>& vectors);

  const Field& field() const { return basis_.field(); }
  int ambient_dim() const { return basis_.cols(); }
  int dim() const { return basis_.rows(); }
  bool is_zero() const { return dim() == 0; }
  const Matrix& basis() const { return basis_; }
  Vec basis_vector(int i) const { return basis_.row_vec(i); }
  std::vector<Vec> basis_vectors() const { return basis_.row_list(); }

  bool contains(std::span<const Elem> v) const;
  bool contains(const Subspace& o) const;
  Subspace operator+(const Subspace& o) const;
  Subspace intersect(const Subspace& o) const;
  /// Image under the linear map M (ambient of result is M.rows()).
  Subspace image(const Matrix& m) const;
  /// Coordinates of v in the stored basis; throws ContainmentViolation if v
  /// is not in the subspace.
  Vec coordinates(std::span<const Elem> v) const;

  bool operator==(const Subspace& o) const;
  bool operator<(const Subspace& o) const { return basis_ < o.basis_; }

 private:
  explicit Subspace(Matrix canonical) : basis_(std::move(canonical)) {}
  void check_ambient(const Subspace& o) const;

  Matrix basis_;
};

enum class SubspaceOp { sum, intersect, contains, equals };

/// Dispatcher over the lattice operations. `contains` tests W inside U.
struct SubspaceOpResult {
  std::optional<Subspace> space;
  std::optional<bool> truth;
};
SubspaceOpResult subspace_ops(const Subspace& u, const Subspace& w, SubspaceOp op);

/// {v : form(v, u) = 0 for every u in U}, with form(x, y) = x^T F y.
Subspace perp(const Subspace& u, const Matrix& form);

/// {x in `domain` : M x = 0}.
Subspace kernel_within(const Matrix& m, const Subspace& domain);

/// Complement C of U inside `inside`: the rows of inside's RREF basis are
/// scanned in order and each one not yet in U + C is added.
/// Throws ContainmentViolation unless U is contained in `inside`.
Subspace complement(const Subspace& u, const Subspace& inside);
/// Randomized variant: the greedy complement with each basis vector shifted
/// by a random element of U. Every complement is reachable.
Subspace complement(const Subspace& u, const Subspace& inside, Rng& rng);

/// Quotient `ambient / L` realized through a section (a complement C of L in
/// the ambient subspace). Quotient coordinates are coordinates along the
/// basis rows of C.
class QuotientMap {
 public:
  QuotientMap(const Subspace& ambient, const Subspace& sub);
  QuotientMap(const Subspace& ambient, const Subspace& sub, Rng& rng);
  QuotientMap(const Subspace& ambient, const Subspace& sub, Matrix section);

  int dim() const { return section_.rows(); }
  /// Rows are the lifts of the quotient basis vectors.
  const Matrix& section() const { return section_; }
  const Subspace& ambient() const { return ambient_; }
  const Subspace& sub() const { return sub_; }

  /// Quotient coordinates of v (v must lie in the ambient subspace).
  Vec project(std::span<const Elem> v) const;
  Vec lift(std::span<const Elem> coords) const;
  /// Preimage in the big space of a subspace of the quotient.
  Subspace lift(const Subspace& s) const;
  /// Image in the quotient of a subspace of the ambient.
  Subspace project(const Subspace& s) const;

  /// Induced bilinear form on the quotient. Throws NotWellDefined unless the
  /// form pairs `sub` trivially with the ambient subspace on both sides.
  Matrix descend_form(const Matrix& form) const;

 private:
  void build();
  Subspace ambient_;
  Subspace sub_;
  Matrix section_;
  Matrix frame_;  // rows: section rows, then sub basis rows
};

/// Every subspace of k^n of the given dimension, in a deterministic order.
std::vector<Subspace> enumerate_subspaces(const Field& field, int n, int dim);

}  // namespace nilpiece
