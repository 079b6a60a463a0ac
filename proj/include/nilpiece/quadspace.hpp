#pragma once

#include <optional>
#include <vector>

#include "nilpiece/field.hpp"
#include "nilpiece/linalg.hpp"

namespace nilpiece {

/// A finite-dimensional space with quadratic form Q(v) = sum_{i<=j} U_ij v_i v_j
/// and polar form beta = U + U^T.
///
/// The standard space of rank N has dimension 2N+1 and coordinate index i
/// standing for the good basis vector e_{i-N}, so that
///   Q(x) = x_0^2 + sum_{i>=1} x_{-i} x_i.
/// General spaces (arbitrary upper Gram matrix) arise as subquotients during
/// classification.
class QuadraticSpace {
 public:
  static QuadraticSpace standard(const Field& field, int N);
  /// `upper` must be square; its strictly lower part is ignored.
  static QuadraticSpace from_upper(const Matrix& upper);

  const Field& field() const { return upper_.field(); }
  int dim() const { return upper_.rows(); }
  /// Rank parameter of a standard space, -1 otherwise.
  int rank_param() const { return N_; }
  bool is_standard() const { return N_ >= 0; }
  /// Coordinate index of e_i in a standard space.
  int index(int i) const { return i + N_; }
  /// Good-basis label of a coordinate index in a standard space.
  int label(int index) const { return index - N_; }

  const Matrix& gram_upper() const { return upper_; }
  const Matrix& polar() const { return polar_; }
  const Subspace& radical() const { return radical_; }

  Elem q(std::span<const Elem> v) const;
  Elem beta(std::span<const Elem> v, std::span<const Elem> w) const { return polar_.bilinear(v, w); }

  /// beta(x, .) as a row vector (its coordinates against the standard basis).
  Vec beta_row(std::span<const Elem> x) const { return polar_.transpose().apply(x); }
  /// Some x with beta(x, .) = phi, free variables zeroed; nullopt if none.
  std::optional<Vec> solve_beta(std::span<const Elem> phi) const;

  /// The radical vector normalized to Q = 1 (characteristic 2, radical a line
  /// on which Q does not vanish). Throws CharacteristicError in odd
  /// characteristic and InternalInvariantViolation if the radical is not a
  /// non-singular line.
  Vec normalized_radical() const;

  /// {u in U : Q(u) = 0} for a subspace on which beta vanishes identically.
  /// In characteristic 2 this is the kernel of the semilinear map sqrt(Q);
  /// in odd characteristic it is U itself. Throws InternalInvariantViolation
  /// if beta does not vanish on U.
  Subspace singular_part(const Subspace& u) const;

  /// Space induced on the span of the given rows (assumed independent):
  /// U'_kk = Q(s_k), U'_kl = beta(s_k, s_l) for k < l.
  QuadraticSpace restricted(const Matrix& rows) const;

  /// Q vanishes on all of U (checked as Q on a basis plus pairwise beta).
  bool q_vanishes_on(const Subspace& u) const;
  bool beta_vanishes_on(const Subspace& u, const Subspace& w) const;

  bool operator==(const QuadraticSpace& o) const { return upper_ == o.upper_; }

 private:
  QuadraticSpace(Matrix upper, int N);

  Matrix upper_;
  Matrix polar_;
  Subspace radical_;
  int N_;
};

/// An alternating bilinear form: zero diagonal, B^T = -B.
class AlternatingForm {
 public:
  /// Throws DimensionMismatch for non-square and ConstructionError for
  /// non-alternating input.
  explicit AlternatingForm(Matrix gram);
  static AlternatingForm zero(const Field& field, int dim);
  /// The form with B(e_i, e_j) = c, B(e_j, e_i) = -c for i != j.
  static AlternatingForm elementary(const Field& field, int dim, int i, int j, Elem c = 1);
  /// Form with the given entries below the diagonal, row-major:
  /// (1,0), (2,0), (2,1), (3,0), ...
  static AlternatingForm from_lower(const Field& field, int dim, std::span<const Elem> lower);
  std::vector<Elem> lower() const;

  const Matrix& gram() const { return gram_; }
  const Field& field() const { return gram_.field(); }
  int dim() const { return gram_.rows(); }
  Elem operator()(std::span<const Elem> v, std::span<const Elem> w) const { return gram_.bilinear(v, w); }
  bool is_zero() const { return gram_.is_zero(); }

  /// Form pulled back along the given rows: (S B S^T).
  AlternatingForm restricted(const Matrix& rows) const;

  bool operator==(const AlternatingForm& o) const { return gram_ == o.gram_; }
  bool operator<(const AlternatingForm& o) const { return gram_ < o.gram_; }

 private:
  Matrix gram_;
};

/// beta_X(v, v') = beta(Xv, v') - beta(v, Xv'), i.e. X^T G - G X.
AlternatingForm xi_to_form(const QuadraticSpace& space, const Matrix& x);

/// Canonical X with xi_to_form(X) = B: the linear system in the d^2 entries of
/// X (row-major) is solved with free variables zeroed.
Matrix form_to_xi(const QuadraticSpace& space, const AlternatingForm& b);

/// True iff {u in U : beta(u, U) = 0, Q(u) = 0} = 0.
bool q_nondegenerate_on(const QuadraticSpace& space, const Subspace& u);

/// The vectors (rows, ordered e_{-N}..e_N) form a good basis of a standard
/// space: beta(e_i, e_j) = [i+j=0] + [i=j=0] and Q(e_i) = [i=0].
bool is_good_basis(const QuadraticSpace& space, const Matrix& rows);

/// Every alternating form of dimension d, streamed in lexicographic order of
/// the lower triangle (index = sum lower[t] q^t).
std::uint64_t alternating_form_count(const Field& field, int dim);
AlternatingForm alternating_form_at(const Field& field, int dim, std::uint64_t index);

}  // namespace nilpiece
