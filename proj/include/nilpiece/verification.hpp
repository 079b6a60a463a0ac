#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nilpiece/field.hpp"

namespace nilpiece {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Nilpotent forms counted by census against q^{2N^2}.
CheckResult check_nilpotent_count(const Field& field, int N, int jobs = 1);

struct BijectionReport {
  std::uint64_t filtrations = 0;
  std::uint64_t nilpotent_forms = 0;
  std::uint64_t not_unique = 0;       // forms in zero or several eta(V_*)
  std::uint64_t classify_differs = 0;  // the unique V_* is not the classified one
  bool pass() const { return nilpotent_forms > 0 && not_unique == 0 && classify_differs == 0; }
};

/// Every nilpotent form against every Q-filtration. Guard: dim <= 5.
BijectionReport verify_bijection(const Field& field, int N);
CheckResult check_bijection(const Field& field, int N);

/// verify_prop2 over the standard grading of every admissible profile.
CheckResult check_prop2(const Field& field, int N, int jobs = 1, bool force = false);

/// Nilpotency against the good-basis oracle over all forms.
CheckResult check_oracle_equivalence(const Field& field, int N);

/// in_eta with the deterministic grading against randomized splittings.
CheckResult check_grading_choice(const Field& field, int N, std::uint64_t seed, int trials);

/// classify(g.B) = g classify(B); sample = 0 runs all pairs (g, B).
CheckResult check_equivariance(const Field& field, int N, std::uint64_t seed, std::size_t sample);

/// classify and compute_H with randomized u_0, W and sections against the
/// deterministic run (characteristic 2).
CheckResult check_h_choice(const Field& field, int N, std::uint64_t seed, int trials);

/// Field axioms on all pairs/triples of elements.
CheckResult check_field_axioms(const Field& field);

}  // namespace nilpiece
