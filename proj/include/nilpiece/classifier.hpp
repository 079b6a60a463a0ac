#pragma once

#include <string>
#include <vector>

#include "nilpiece/grading.hpp"
#include "nilpiece/nilcone.hpp"

namespace nilpiece {

/// One recursion level of the characteristic-2 construction (or the single
/// weight-filtration step in odd characteristic).
struct TraceLevel {
  int dim = 0;
  int m = 0;
  int lambda1 = 0;
  int l1 = 0;
  bool rho_zero = true;
  std::string case_tag;
  int n = 0;
};

struct ClassificationResult {
  QFiltration filtration;
  Profile profile;
  std::vector<TraceLevel> trace;

  bool operator==(const ClassificationResult& o) const { return filtration == o.filtration; }
};

struct HData {
  Subspace H;
  std::string case_tag;
  int n = 0;
};

/// Characteristic 2, nonzero nilpotent form with its chain data.
HData compute_H(const QuadraticSpace& space, const ChainData& c, const AlternatingForm& b);

struct ClassifyOptions {
  /// Randomizes u_0, the complement W (m = 0) and the quotient sections.
  Rng* rng = nullptr;
};

/// The unique Q-filtration V_* with B in eta(V_*). Throws NotNilpotent for
/// non-nilpotent input and InternalInvariantViolation if the result fails
/// the eta test.
ClassificationResult classify(const QuadraticSpace& space, const AlternatingForm& b, const ClassifyOptions& options = {});

/// V^{>=a} = sum over i, l >= 0 with i - l + 1 >= a of im A^i cap ker A^l.
QFiltration weight_filtration(const Matrix& a);

inline const Profile& piece_label(const ClassificationResult& r) { return r.profile; }

}  // namespace nilpiece
