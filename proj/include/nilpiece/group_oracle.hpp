#pragma once

#include <cstdint>
#include <vector>

#include "nilpiece/grading.hpp"
#include "nilpiece/linalg.hpp"
#include "nilpiece/quadspace.hpp"

namespace nilpiece {

/// All of O(V) for a small space, with the SO(V) sublist. In characteristic 2
/// SO(V) = O(V); in odd characteristic SO(V) is the determinant-1 part.
class IsometryGroup {
 public:
  IsometryGroup(QuadraticSpace space, std::vector<Matrix> all);

  const QuadraticSpace& space() const { return space_; }
  /// SO(V), sorted.
  const std::vector<Matrix>& elements() const { return so_; }
  /// O(V), sorted.
  const std::vector<Matrix>& orthogonal() const { return all_; }
  std::size_t order() const { return so_.size(); }

 private:
  QuadraticSpace space_;
  std::vector<Matrix> all_;
  std::vector<Matrix> so_;
};

/// Backtracking over images of the standard basis. Guarded to dim <= 5,
/// q <= 4; groups above 10^5 elements additionally need `force`.
IsometryGroup enumerate_isometries(const QuadraticSpace& space, bool force = false, int jobs = 1);

/// (g.B)(v, v') = B(g^-1 v, g^-1 v'), i.e. g^-T B g^-1.
AlternatingForm transport_form(const Matrix& g, const AlternatingForm& b);

/// All g in SO(V) with g.B = B.
std::vector<Matrix> centralizer(const IsometryGroup& group, const AlternatingForm& b);

/// g V^{>=a} = V^{>=a} for every a.
bool stabilizes_filtration(const Matrix& g, const QFiltration& f);

struct Prop2Mismatch {
  AlternatingForm form;
  bool centralizer_in_stabilizer;
  bool in_s2_0;
};

struct Prop2Report {
  Profile profile;
  std::uint64_t forms_checked = 0;
  std::uint64_t in_s2_0_count = 0;
  std::vector<Prop2Mismatch> mismatches;
};

/// For the grading split from F and every form in S(V)_2, compare
/// [Z(B) inside the stabilizer of F] with in_S2_0(B). Throws SizeError outside
/// dim <= 5, q <= 4.
Prop2Report verify_prop2(const IsometryGroup& group, const QFiltration& f);
Prop2Report verify_prop2(const QuadraticSpace& space, const QFiltration& f);

}  // namespace nilpiece
