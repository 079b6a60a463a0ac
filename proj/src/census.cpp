#include "nilpiece/census.hpp"

#include <chrono>
#include <exception>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "nilpiece/classifier.hpp"
#include "nilpiece/errors.hpp"
#include "nilpiece/nilcone.hpp"

namespace nilpiece {
namespace {

BigInt ipow(int q, int e) {
  BigInt r = 1;
  for (int i = 0; i < e; ++i) r *= q;
  return r;
}

std::string str(const BigInt& x) { return x.str(); }

FormulaCheck make_check(std::string name, const BigInt& expected, const BigInt& actual) {
  return {std::move(name), str(expected), str(actual), expected == actual};
}

// All vectors of k^d in index order.
std::vector<Vec> all_vectors(const Field& f, int d) {
  const int q = f.order();
  std::uint64_t total = 1;
  for (int i = 0; i < d; ++i) total *= q;
  std::vector<Vec> out;
  out.reserve(total);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    Vec v(d);
    std::uint64_t r = idx;
    for (int c = 0; c < d; ++c) {
      v[c] = static_cast<Elem>(r % q);
      r /= q;
    }
    out.push_back(std::move(v));
  }
  return out;
}

// Recursively extends `cur` by independent vectors keeping the span
// Q-isotropic; calls `visit` on each complete sequence of length m.
template <class Visit>
void isotropic_sequences(const QuadraticSpace& space, const std::vector<Vec>& iso, int m, std::vector<Vec>& cur,
                         Visit&& visit) {
  if (static_cast<int>(cur.size()) == m) {
    visit(cur);
    return;
  }
  for (const auto& v : iso) {
    bool ok = true;
    for (const auto& w : cur)
      if (space.beta(v, w) != 0) {
        ok = false;
        break;
      }
    if (!ok) continue;
    cur.push_back(v);
    if (rank_of(space.field(), space.dim(), cur) == static_cast<int>(cur.size())) {
      isotropic_sequences(space, iso, m, cur, visit);
    }
    cur.pop_back();
  }
}

std::vector<Vec> isotropic_vectors(const QuadraticSpace& space) {
  std::vector<Vec> out;
  for (auto& v : all_vectors(space.field(), space.dim()))
    if (!vec::is_zero(v) && space.q(v) == 0) out.push_back(std::move(v));
  return out;
}

}  // namespace

bool CensusReport::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

Field field_of_order(int q) {
  for (int p = 2; p <= q; ++p) {
    bool prime = true;
    for (int d = 2; d * d <= p; ++d)
      if (p % d == 0) prime = false;
    if (!prime || q % p != 0) continue;
    int k = 0, r = q;
    while (r % p == 0) {
      r /= p;
      ++k;
    }
    if (r != 1) break;
    return Field::create(p, k);
  }
  throw SizeError("not a prime power: " + std::to_string(q));
}

CensusReport nilpotent_census(const Field& field, int N, int jobs) {
  const int q = field.order();
  if (!((N == 1 && q <= 16) || (N == 2 && q <= 4))) throw SizeError("census is limited to N = 1 (q <= 16) or N = 2 (q <= 4)");
  const auto start = std::chrono::steady_clock::now();
  const QuadraticSpace space = QuadraticSpace::standard(field, N);
  const int d = space.dim();
  const std::uint64_t count = alternating_form_count(field, d);
  jobs = std::max(1, jobs);

  struct Part {
    std::uint64_t total = 0;
    std::uint64_t failures = 0;
    std::map<Profile, std::uint64_t> tally;
  };
  std::vector<Part> parts(jobs);
  std::vector<std::exception_ptr> errors(jobs);
  std::vector<std::thread> workers;
  for (int w = 0; w < jobs; ++w) {
    workers.emplace_back([&, w] {
      try {
        Part& part = parts[w];
        const std::uint64_t lo = count * w / jobs;
        const std::uint64_t hi = count * (w + 1) / jobs;
        for (std::uint64_t i = lo; i < hi; ++i) {
          const AlternatingForm b = alternating_form_at(field, d, i);
          if (!is_nilpotent(space, b)) continue;
          ++part.total;
          try {
            ++part.tally[classify(space, b).profile];
          } catch (const Error&) {
            ++part.failures;
          }
        }
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : workers) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  CensusReport rep;
  rep.N = N;
  rep.p = field.characteristic();
  rep.k = field.degree();
  rep.q = q;
  std::uint64_t failures = 0;
  for (const auto& part : parts) {
    rep.total += part.total;
    failures += part.failures;
    for (const auto& [p, c] : part.tally) rep.tally[p] += c;
  }
  std::uint64_t sum = 0;
  for (const auto& [p, c] : rep.tally) sum += c;
  rep.checks.push_back(make_check("nilpotent total = q^(2N^2)", ipow(q, 2 * N * N), rep.total));
  rep.checks.push_back(make_check("classified forms = nilpotent total", rep.total, sum));
  rep.checks.push_back(make_check("classification failures", 0, failures));
  rep.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

BigInt sm_formula(int q, int N, int m) {
  BigInt r = 1;
  for (int i = 0; i < m; ++i) r *= ipow(q, 2 * N - 2 * i) - 1;
  return r * ipow(q, m * (m - 1) / 2);
}

BigInt springer_formula(int q, int N, int m) { return ipow(q, 2 * (N - m) * (N - m - 1)); }

BigInt fiber_formula(int q, int N, int m) { return ipow(q, 2 * m * (N - m) + m * (m - 1) / 2); }

FormulaCheck sm_count(const Field& field, int N, int m) {
  if (N > 2 || field.order() > 4 || m < 0 || m > N) throw SizeError("S_m enumeration is limited to N <= 2, q <= 4, m <= N");
  const QuadraticSpace space = QuadraticSpace::standard(field, N);
  const auto iso = isotropic_vectors(space);
  std::uint64_t n = 0;
  std::vector<Vec> cur;
  isotropic_sequences(space, iso, m, cur, [&](const std::vector<Vec>&) { ++n; });
  return make_check("|S_" + std::to_string(m) + "| (N=" + std::to_string(N) + ", q=" + std::to_string(field.order()) + ")",
                    sm_formula(field.order(), N, m), n);
}

FormulaCheck springer_count(const Field& field, int N, int m) {
  if (field.order() != 2 || N - m > 2 || m < 0 || m > N) throw SizeError("Springer count is limited to q = 2, N - m <= 2");
  const QuadraticSpace space = QuadraticSpace::standard(field, N);
  const auto iso = isotropic_vectors(space);
  std::vector<Vec> first;
  std::vector<Vec> cur;
  bool found = false;
  isotropic_sequences(space, iso, m, cur, [&](const std::vector<Vec>& s) {
    if (!found) {
      first = s;
      found = true;
    }
  });
  if (!found) throw InternalInvariantViolation("S_m is empty");
  std::vector<Vec> lgens = first;
  lgens.push_back(space.normalized_radical());
  const Subspace L = Subspace::span(field, space.dim(), lgens);
  QuotientMap qm(perp(L, space.polar()), L);
  const Matrix g = qm.descend_form(space.polar());
  const int dp = qm.dim();
  std::uint64_t n = 0;
  if (dp == 0) {
    n = 1;
  } else {
    auto ginv = inverse(g);
    if (!ginv) throw InternalInvariantViolation("beta' is degenerate");
    // T with beta'(Tv, v) = 0 <=> C(v, w) = beta'(Tv, w) alternating.
    const std::uint64_t count = alternating_form_count(field, dp);
    for (std::uint64_t i = 0; i < count; ++i) {
      const AlternatingForm c = alternating_form_at(field, dp, i);
      if (is_nilpotent_matrix(*ginv * c.gram().transpose())) ++n;
    }
  }
  return make_check("|N_v*| (N=" + std::to_string(N) + ", m=" + std::to_string(m) + ", q=2)",
                    springer_formula(2, N, m), n);
}

FiberReport fiber_check(const Field& field, int N) {
  const int q = field.order();
  if (field.characteristic() != 2 || !((N == 1 && q <= 4) || (N == 2 && q == 2)))
    throw SizeError("fiber check is limited to characteristic 2 with N = 1 (q <= 4) or N = 2 (q = 2)");
  const QuadraticSpace space = QuadraticSpace::standard(field, N);
  const int d = space.dim();
  std::map<std::pair<std::vector<Vec>, Matrix>, std::uint64_t> fibers;
  std::map<std::pair<std::vector<Vec>, Matrix>, int> fiber_m;
  const std::uint64_t count = alternating_form_count(field, d);
  for (std::uint64_t i = 0; i < count; ++i) {
    const AlternatingForm b = alternating_form_at(field, d, i);
    if (!is_nilpotent(space, b)) continue;
    auto chain = extract_v_chain(space, b);
    if (!chain) throw InternalInvariantViolation("nilpotent form without a chain");
    const Subspace L = Subspace::span(field, d, chain->v);
    const Subspace lp = perp(L, space.polar());
    std::vector<Vec> vstar(chain->v.begin(), chain->v.end() - 1);
    auto key = std::make_pair(vstar, lp.basis() * b.gram() * lp.basis().transpose());
    ++fibers[key];
    fiber_m[key] = chain->m;
  }
  FiberReport rep;
  rep.N = N;
  rep.q = q;
  std::map<int, std::set<std::uint64_t>> sizes;
  for (const auto& [key, n] : fibers) {
    const int m = fiber_m[key];
    ++rep.fibers[m].first;
    sizes[m].insert(n);
  }
  for (auto& [m, s] : sizes) rep.fibers[m].second.assign(s.begin(), s.end());
  for (int m = 0; m <= N; ++m) {
    const std::string tag = " (N=" + std::to_string(N) + ", m=" + std::to_string(m) + ", q=" + std::to_string(q) + ")";
    const auto it = rep.fibers.find(m);
    const BigInt expected_size = fiber_formula(q, N, m);
    std::string actual = "none";
    bool pass = false;
    if (it != rep.fibers.end()) {
      const auto& seen = it->second.second;
      std::ostringstream os;
      for (std::size_t j = 0; j < seen.size(); ++j) os << (j ? "," : "") << seen[j];
      actual = os.str();
      pass = seen.size() == 1 && BigInt(seen[0]) == expected_size;
    }
    rep.checks.push_back({"fiber size" + tag, str(expected_size), actual, pass});
    const BigInt expected_count = sm_formula(q, N, m) * springer_formula(q, N, m);
    rep.checks.push_back(make_check("fiber count" + tag, expected_count, it == rep.fibers.end() ? 0 : it->second.first));
  }
  return rep;
}

FormulaCheck xn_identity(int n_max, const std::vector<int>& qs) {
  std::ostringstream bad;
  bool pass = true;
  for (int q : qs) {
    BigInt rec = 1;  // X_1
    for (int N = 1; N <= n_max; ++N) {
      BigInt sum = 0;
      for (int m = 0; m <= N; ++m) {
        BigInt t = ipow(q, N - m);
        for (int j = 0; j < m; ++j) t *= 1 - ipow(q, N - j);
        sum += t;
      }
      if (N > 1) rec = ipow(q, N) + (1 - ipow(q, N)) * rec;
      if (sum != 1 || rec != 1) {
        pass = false;
        bad << " q=" << q << ",N=" << N << ":" << sum << "/" << rec;
      }
    }
  }
  return {"X_N = 1 (sum and recurrence, N <= " + std::to_string(n_max) + ")", "1", pass ? "1" : "mismatch" + bad.str(), pass};
}

FormulaCheck master_identity(int n_max, const std::vector<int>& qs) {
  std::ostringstream bad;
  bool pass = true;
  for (int q : qs)
    for (int N = 1; N <= n_max; ++N) {
      BigInt sum = 0;
      for (int m = 0; m <= N; ++m) sum += sm_formula(q, N, m) * springer_formula(q, N, m) * fiber_formula(q, N, m);
      if (sum != ipow(q, 2 * N * N)) {
        pass = false;
        bad << " q=" << q << ",N=" << N << ":" << sum;
      }
    }
  return {"sum_m |S_m| q^(2(N-m)(N-m-1)) q^(2m(N-m)+m(m-1)/2) = q^(2N^2)", "q^(2N^2)", pass ? "q^(2N^2)" : "mismatch" + bad.str(),
          pass};
}

std::vector<BigRational> interpolate(const std::vector<BigInt>& xs, const std::vector<BigInt>& ys) {
  if (xs.size() != ys.size() || xs.empty()) throw DimensionMismatch("interpolation needs matching nonempty samples");
  const std::size_t n = xs.size();
  std::vector<BigRational> out(n, BigRational(0));
  for (std::size_t i = 0; i < n; ++i) {
    // basis polynomial prod_{j != i} (x - x_j) / (x_i - x_j)
    std::vector<BigRational> basis{BigRational(1)};
    BigRational denom = 1;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      if (xs[i] == xs[j]) throw ConstructionError("repeated interpolation node");
      std::vector<BigRational> next(basis.size() + 1, BigRational(0));
      for (std::size_t t = 0; t < basis.size(); ++t) {
        next[t + 1] += basis[t];
        next[t] -= basis[t] * BigRational(xs[j]);
      }
      basis = std::move(next);
      denom *= BigRational(xs[i] - xs[j]);
    }
    for (std::size_t t = 0; t < basis.size(); ++t) out[t] += basis[t] * BigRational(ys[i]) / denom;
  }
  return out;
}

std::string PolynomialFit::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (int t = static_cast<int>(coefficients.size()) - 1; t >= 0; --t) {
    const BigRational& c = coefficients[t];
    if (c == 0) continue;
    BigRational a = c < 0 ? BigRational(-c) : c;
    if (first)
      os << (c < 0 ? "-" : "");
    else
      os << (c < 0 ? " - " : " + ");
    first = false;
    const bool one = a == 1;
    if (!one || t == 0) os << a;
    if (t >= 1) os << (one ? "" : "*") << "q";
    if (t >= 2) os << "^" << t;
  }
  if (first) os << "0";
  return os.str();
}

bool UniversalityReport::pass() const {
  for (const auto& f : fits)
    if (!f.integral || !f.consistent) return false;
  return !fits.empty();
}

UniversalityReport universality_check(int N, const std::vector<int>& qs, int jobs) {
  if (N != 1) throw SizeError("universality check is limited to N = 1");
  const int bound = 2 * N * N;
  if (static_cast<int>(qs.size()) < bound + 2) throw ConstructionError("need at least 2N^2 + 2 sample values of q");
  UniversalityReport rep;
  rep.N = N;
  rep.qs = qs;
  std::vector<CensusReport> censuses;
  std::set<Profile> profiles;
  for (int q : qs) {
    censuses.push_back(nilpotent_census(field_of_order(q), N, jobs));
    for (const auto& [p, c] : censuses.back().tally) profiles.insert(p);
  }
  std::vector<BigInt> xs;
  for (int q : qs) xs.push_back(q);
  auto fit = [&](const std::string& label, const std::vector<BigInt>& ys) {
    PolynomialFit f;
    f.label = label;
    auto coeffs = interpolate(xs, ys);
    f.consistent = true;
    for (std::size_t t = bound + 1; t < coeffs.size(); ++t)
      if (coeffs[t] != 0) f.consistent = false;
    coeffs.resize(std::min<std::size_t>(coeffs.size(), bound + 1));
    f.integral = true;
    for (const auto& c : coeffs)
      if (denominator(c) != 1) f.integral = false;
    f.coefficients = std::move(coeffs);
    rep.fits.push_back(std::move(f));
  };
  for (const auto& p : profiles) {
    std::vector<BigInt> ys;
    for (const auto& c : censuses) {
      auto it = c.tally.find(p);
      ys.push_back(it == c.tally.end() ? 0 : it->second);
    }
    fit(p.to_string(), ys);
  }
  std::vector<BigInt> totals;
  for (const auto& c : censuses) totals.push_back(c.total);
  fit("total", totals);
  return rep;
}

}  // namespace nilpiece
