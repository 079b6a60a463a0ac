#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nilpiece/linalg.hpp"
#include "nilpiece/quadspace.hpp"

namespace nilpiece {

/// Dimension vector (f_a) of the graded pieces; only nonzero entries are
/// stored.
class Profile {
 public:
  Profile() = default;
  explicit Profile(std::map<int, int> f);
  /// From the nonnegative half {(a, f_a) : a >= 0}; f_{-a} := f_a.
  static Profile from_nonnegative(const std::vector<std::pair<int, int>>& half);
  /// The trivial profile {f_0 = dim}.
  static Profile trivial(int dim);

  int at(int a) const;
  const std::map<int, int>& values() const { return f_; }
  std::vector<std::pair<int, int>> nonnegative() const;
  int total() const;
  /// Largest a with f_a != 0 (0 for the empty profile).
  int top() const;
  /// f_{-a} = f_a, f_a even for odd a, f_0 >= f_2 >= ..., f_1 >= f_3 >= ...,
  /// and the entries sum to dim.
  bool is_admissible(int dim) const;
  std::string to_string() const;

  bool operator==(const Profile& o) const { return f_ == o.f_; }
  bool operator<(const Profile& o) const { return nonnegative() < o.nonnegative(); }

 private:
  std::map<int, int> f_;
};

/// Every admissible profile for the given dimension, sorted.
std::vector<Profile> admissible_profiles(int dim);

/// A decreasing filtration (V^{>=a}). Stored canonically: `first` is the
/// largest a with V^{>=a} = V and levels run up to the smallest a with
/// V^{>=a} = 0, so equal filtrations compare equal member-wise.
class QFiltration {
 public:
  /// The trivial filtration: V^{>=a} = V for a <= 0, 0 for a >= 1.
  QFiltration(Field field, int dim);
  /// levels[i] = V^{>=start+i}; V^{>=a} = V below `start` and 0 past the
  /// last level. Throws ContainmentViolation if the levels do not decrease.
  static QFiltration from_levels(int start, const std::vector<Subspace>& levels);

  int dim() const { return dim_; }
  const Field& field() const { return field_; }
  Subspace at(int a) const;
  int first() const { return first_; }
  /// Smallest a with V^{>=a} = 0.
  int zero_from() const { return first_ + static_cast<int>(levels_.size()) - 1; }
  /// Top degree n: the largest a with V^{>=a} != 0.
  int top() const { return zero_from() - 1; }
  /// Levels V^{>=a} for a in [first(), zero_from()].
  const std::vector<Subspace>& levels() const { return levels_; }
  Profile profile() const;

  /// Q-filtration axioms: Q vanishes on V^{>=a} and V^{>=1-a} = (V^{>=a})^perp
  /// for every a >= 1.
  bool is_q_filtration(const QuadraticSpace& space) const;

  /// g V^{>=a} for every a.
  QFiltration transported(const Matrix& g) const;

  bool operator==(const QFiltration& o) const;
  bool operator<(const QFiltration& o) const;

 private:
  Field field_;
  int dim_;
  int first_;
  std::vector<Subspace> levels_;
};

/// V = sum_a V^a.
class OGoodGrading {
 public:
  OGoodGrading(Field field, int dim, std::map<int, Subspace> pieces);

  int dim() const { return dim_; }
  const Field& field() const { return field_; }
  /// The piece V^a (zero subspace when absent).
  Subspace piece(int a) const;
  const std::map<int, Subspace>& pieces() const { return pieces_; }
  int top() const;

  /// Rows: the bases of the pieces in increasing degree order.
  const Matrix& graded_basis() const { return basis_; }
  const std::vector<int>& degrees() const { return degrees_; }
  /// Inverse of the graded basis (as a matrix with rows = basis).
  const Matrix& graded_basis_inverse() const { return basis_inv_; }

  QFiltration filtration() const;
  Profile profile() const;

  /// Throws NotOGood with a reason if the grading is not o-good for the space.
  void validate(const QuadraticSpace& space) const;

 private:
  Field field_;
  int dim_;
  std::map<int, Subspace> pieces_;
  Matrix basis_;
  Matrix basis_inv_;
  std::vector<int> degrees_;
};

/// A compatible o-good grading: positive pieces are complements inside the
/// filtration, negative pieces are beta-dual and Q-isotropic, V^0 is the
/// orthogonal of the rest. With an rng every complement and dual solution is
/// shifted randomly. Throws NotOGood if no grading is found.
OGoodGrading split_filtration(const QuadraticSpace& space, const QFiltration& f, Rng* rng = nullptr);

/// Grading of a standard space realizing the profile on the standard basis:
/// positive degrees (largest first) go to e_N, e_{N-1}, ..., the matching
/// negative degrees to e_{-N}, e_{-N+1}, ..., and degree 0 to the rest.
OGoodGrading standard_grading(const QuadraticSpace& space, const Profile& p);

/// beta_xi(V^{>=a}, V^{>=b}) = 0 whenever a + b >= -1.
bool eta_vanishing(const QFiltration& f, const AlternatingForm& b);

/// The graded form sum_a beta_xi(x^a, y^{-a-2}). Throws NotInEta if the
/// vanishing precondition fails.
AlternatingForm bar_form(const QFiltration& f, const OGoodGrading& g, const AlternatingForm& b);

/// beta_xi(V^a, V^b) = 0 unless a + b = -2.
bool is_graded_form(const OGoodGrading& g, const AlternatingForm& b);

/// The map A with beta(A x^a, y^{-a-2}) = beta_xi(x^a, y^{-a-2}) as an ambient
/// matrix. Degree -2 is included only when beta is nondegenerate on V^0
/// (odd characteristic); otherwise A vanishes on V^{-2}.
Matrix graded_map(const QuadraticSpace& space, const OGoodGrading& g, const AlternatingForm& b);

/// Individual conditions of the S(V)_2^0 test.
struct S2Conditions {
  bool a_surjective = true;     // V^0 -> V^2 -> ... all onto
  bool a_nondegenerate = true;  // Q nondegenerate on ker(A^n : V^0 -> V^{2n})
  bool b_prime = true;          // A^{2n-1} : V^{-2n+1} -> V^{2n-1} bijective
  bool b_kernel_form = true;    // odd chain onto, beta(A-, -) nondegenerate on kernels
  std::optional<bool> a_prime;  // odd characteristic: A^{2n} : V^{-2n} -> V^{2n} bijective

  bool a() const { return a_surjective && a_nondegenerate; }
};

/// Throws NotGraded if the form is not in S(V)_2 for the grading.
S2Conditions s2_conditions(const QuadraticSpace& space, const OGoodGrading& g, const AlternatingForm& bbar);

/// Conditions (a) and (b') (plus (a') in odd characteristic, which must agree
/// with (a); a disagreement throws InternalInvariantViolation).
bool in_S2_0(const QuadraticSpace& space, const OGoodGrading& g, const AlternatingForm& bbar);

/// The vanishing precondition and in_S2_0 of the induced graded form, for a
/// grading split from the filtration. False on any failed stage.
bool in_eta(const QuadraticSpace& space, const QFiltration& f, const AlternatingForm& b, Rng* rng = nullptr);

/// Data of the characteristic-2 reduction of a graded form: the chain
/// vbar_i = A^{mbar-i} vbar_mbar from the radical, ubar_i = A^i ubar_0, the
/// graded complement Wbar = sum_a Wbar^a and Abar on it.
struct BarData {
  int mbar = 0;
  std::vector<Vec> vbar;  // vbar_0..vbar_mbar
  std::vector<Vec> ubar;  // ubar_0..ubar_{mbar-1}
  std::map<int, Subspace> wbar;
  Matrix abar;  // ambient matrix, zero outside Wbar
  bool a1 = true;
  bool a2 = true;
};

/// Throws CharacteristicError in odd characteristic, NotGraded if the form is
/// not in S(V)_2, and InternalInvariantViolation if Abar fails its defining
/// identities.
BarData bar_decomposition(const QuadraticSpace& space, const OGoodGrading& g, const AlternatingForm& bbar);

/// Every form in S(V)_2 for the grading (blocks between degrees a and -a-2),
/// in a deterministic order. Throws SizeError above 2^22 forms.
std::vector<AlternatingForm> enumerate_graded_forms(const OGoodGrading& g);

/// Every Q-filtration admitting an o-good grading, grouped by admissible
/// profile. Throws SizeError above dimension 7.
std::vector<QFiltration> enumerate_q_filtrations(const QuadraticSpace& space);

}  // namespace nilpiece
