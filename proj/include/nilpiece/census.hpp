#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "nilpiece/grading.hpp"

namespace nilpiece {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

struct FormulaCheck {
  std::string name;
  std::string expected;
  std::string actual;
  bool pass = false;
};

struct CensusReport {
  int N = 0;
  int p = 0;
  int k = 0;
  int q = 0;
  std::uint64_t total = 0;
  std::map<Profile, std::uint64_t> tally;
  double elapsed_ms = 0;
  std::vector<FormulaCheck> checks;

  bool all_pass() const;
};

/// Enumerates every alternating form on the standard space of rank N,
/// classifies the nilpotent ones and tallies profiles. Guard: N = 1 with
/// q <= 16, or N = 2 with q <= 4. The result does not depend on `jobs`.
CensusReport nilpotent_census(const Field& field, int N, int jobs = 1);

/// (q^{2N}-1)(q^{2N-2}-1)...(q^{2N-2m+2}-1) q^{m(m-1)/2}
BigInt sm_formula(int q, int N, int m);
/// q^{2(N-m)(N-m-1)}
BigInt springer_formula(int q, int N, int m);
/// q^{2m(N-m)+m(m-1)/2}
BigInt fiber_formula(int q, int N, int m);

/// Sequences of m independent vectors spanning a Q-isotropic subspace,
/// counted by enumeration. Guard: N <= 2, q <= 4.
FormulaCheck sm_count(const Field& field, int N, int m);

/// Nilpotent T with beta'(Tv, v) = 0 on V' = L^perp / L for the first
/// sequence in S_m, counted by enumeration. Guard: N - m <= 2, q = 2
/// (characteristic 2 only).
FormulaCheck springer_count(const Field& field, int N, int m);

struct FiberReport {
  int N = 0;
  int q = 0;
  /// m -> (number of fibers, sizes seen)
  std::map<int, std::pair<std::uint64_t, std::vector<std::uint64_t>>> fibers;
  std::vector<FormulaCheck> checks;
};

/// Groups the nilpotent forms by (v_*, beta_xi restricted to L^perp) and
/// compares fiber sizes and counts with the formulas. Guard: characteristic
/// 2 with N = 1, q <= 4 or N = 2, q = 2.
FiberReport fiber_check(const Field& field, int N);

/// X_N by its defining sum and by the recurrence, for every N <= n_max and q.
FormulaCheck xn_identity(int n_max, const std::vector<int>& qs);

/// sum_m S_m * springer * fiber = q^{2N^2} as exact integers.
FormulaCheck master_identity(int n_max, const std::vector<int>& qs);

struct PolynomialFit {
  std::string label;
  std::vector<BigRational> coefficients;  // constant term first
  bool integral = false;
  bool consistent = false;  // degree within the bound on all sampled q

  std::string to_string() const;
};

struct UniversalityReport {
  int N = 0;
  std::vector<int> qs;
  std::vector<PolynomialFit> fits;  // per profile, then "total"
  bool pass() const;
};

/// Per-piece counts from censuses at each q, interpolated over the rationals.
/// Requires at least 2N^2 + 2 sample points for a consistency check.
UniversalityReport universality_check(int N, const std::vector<int>& qs, int jobs = 1);

/// Lagrange interpolation through (x_i, y_i), coefficients constant first.
std::vector<BigRational> interpolate(const std::vector<BigInt>& xs, const std::vector<BigInt>& ys);

/// The field GF(q) with its default modulus; throws SizeError for q not a
/// prime power <= 256.
Field field_of_order(int q);

}  // namespace nilpiece
