#pragma once

#include <optional>
#include <vector>

#include "nilpiece/linalg.hpp"
#include "nilpiece/quadspace.hpp"

namespace nilpiece {

class IsometryGroup;

/// The vectors v_0..v_m (characteristic 2): v_m spans the radical with
/// Q(v_m) = 1, beta_xi(v_i, .) = beta(v_{i-1}, .), beta_xi(v_0, .) = 0 and
/// Q(v_i) = 0 for i < m.
struct VChain {
  int m = 0;
  std::vector<Vec> v;  // v[0..m]
};

/// Chain invariants driving the classifier. Vectors are in ambient
/// coordinates. T acts on coordinate columns relative to the rows of
/// `w_basis`.
struct ChainData {
  int m = 0;
  std::vector<Vec> v;  // v_0..v_m
  std::vector<Vec> u;  // u_0..u_{m-1}
  Subspace W;
  Matrix w_basis;
  Matrix T;
  int lambda1 = 0;
  int f = 0;
  int l1 = 0;
  bool rho_zero = true;

  /// Ambient vector with the given W-coordinates.
  Vec w_vector(std::span<const Elem> coords) const;
  /// Image under T^e of a subspace of W, both given in ambient coordinates.
  Subspace t_power_image(int e, const Subspace& domain) const;
};

/// Hooks for the choice-independence checks. With an rng, u_0 is shifted by
/// a random solution of the homogeneous system and, when m = 0, W is a random
/// complement of span{v_m}.
struct ChainOptions {
  Rng* rng = nullptr;
};

/// Throws CharacteristicError in odd characteristic. Returns nullopt when the
/// chain cannot be built (a linear step has no solution, vectors become
/// dependent, or too many steps are needed).
std::optional<VChain> extract_v_chain(const QuadraticSpace& space, const AlternatingForm& b);

/// Full chain data. Returns nullopt if the v-chain fails, a u-step has no
/// solution, the decomposition V = span v + span u + W fails, or T is not
/// nilpotent. Throws InternalInvariantViolation if a constructed object
/// violates its defining identities.
std::optional<ChainData> extract_chain(const QuadraticSpace& space, const AlternatingForm& b,
                                       const ChainOptions& options = {});

/// L = span{v_0..v_m}; V' = L^perp / L with the induced forms and the map T'
/// defined by beta'(T' x, y) = beta'_xi(x, y).
struct InducedPair {
  std::vector<Vec> v_star;  // v_0..v_{m-1}
  Subspace L;
  Subspace L_perp;
  QuotientMap quotient;
  QuadraticSpace space;
  AlternatingForm form;
  Matrix T;
};

InducedPair induced_pair(const QuadraticSpace& space, const VChain& chain, const AlternatingForm& b);

/// A with beta(Av, v') = beta_xi(v, v'); requires beta nondegenerate.
Matrix form_endomorphism(const QuadraticSpace& space, const AlternatingForm& b);
bool is_nilpotent_matrix(const Matrix& a);
/// Least e with A^e = 0, or -1 if A is not nilpotent.
int nilpotency_index(const Matrix& a);

/// Membership in the nilpotent cone: in characteristic 2 the chain exists and
/// T' is nilpotent; in odd characteristic A is nilpotent.
bool is_nilpotent(const QuadraticSpace& space, const AlternatingForm& b);

/// True iff some good basis e'_i = g e_i (g in O(V)) has beta_xi(e'_i, e'_j) = 0
/// whenever i + j >= 0. Throws SizeError outside dims 3, 5 and q <= 4.
bool good_basis_oracle(const QuadraticSpace& space, const AlternatingForm& b);
bool good_basis_oracle(const IsometryGroup& group, const AlternatingForm& b);

}  // namespace nilpiece
