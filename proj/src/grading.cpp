#include "nilpiece/grading.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "nilpiece/errors.hpp"

namespace nilpiece {
namespace {

Subspace zero_space(const Field& f, int d) { return Subspace(f, d); }


// Rank of {M x : x in basis of U}.
int image_rank(const Matrix& m, const Subspace& u) {
  if (u.dim() == 0) return 0;
  return rank(u.basis() * m.transpose());
}

Matrix gram_on(const Matrix& form, const Subspace& u) { return u.basis() * form * u.basis().transpose(); }

}  // namespace

// ---------------------------------------------------------------- Profile

Profile::Profile(std::map<int, int> f) {
  for (auto [a, n] : f) {
    if (n < 0) throw ConstructionError("negative profile entry");
    if (n > 0) f_[a] = n;
  }
}

Profile Profile::from_nonnegative(const std::vector<std::pair<int, int>>& half) {
  std::map<int, int> f;
  for (auto [a, n] : half) {
    if (a < 0) throw ConstructionError("negative degree in half profile");
    f[a] = n;
    f[-a] = n;
  }
  return Profile(f);
}

Profile Profile::trivial(int dim) { return Profile(std::map<int, int>{{0, dim}}); }

int Profile::at(int a) const {
  auto it = f_.find(a);
  return it == f_.end() ? 0 : it->second;
}

std::vector<std::pair<int, int>> Profile::nonnegative() const {
  std::vector<std::pair<int, int>> out;
  for (auto [a, n] : f_)
    if (a >= 0) out.emplace_back(a, n);
  return out;
}

int Profile::total() const {
  int s = 0;
  for (auto [a, n] : f_) s += n;
  return s;
}

int Profile::top() const { return f_.empty() ? 0 : std::max(0, f_.rbegin()->first); }

bool Profile::is_admissible(int dim) const {
  if (total() != dim) return false;
  for (auto [a, n] : f_) {
    if (at(-a) != n) return false;
    if (a % 2 != 0 && n % 2 != 0) return false;
  }
  for (int a = 0; a <= top(); ++a)
    if (at(a) < at(a + 2)) return false;
  return true;
}

std::string Profile::to_string() const {
  std::ostringstream os;
  os << '[';
  bool first = true;
  for (auto [a, n] : nonnegative()) {
    if (!first) os << ',';
    first = false;
    os << '[' << a << ',' << n << ']';
  }
  os << ']';
  return os.str();
}

std::vector<Profile> admissible_profiles(int dim) {
  std::vector<Profile> out;
  std::map<int, int> cur;
  std::function<void(int, int)> rec = [&](int b, int budget) {
    if (b > dim) {
      std::map<int, int> full{{0, budget}};
      for (auto [a, n] : cur) {
        full[a] = n;
        full[-a] = n;
      }
      Profile p(full);
      if (p.is_admissible(dim)) out.push_back(p);
      return;
    }
    for (int n = 0; 2 * n <= budget; ++n) {
      if (n > 0) cur[b] = n;
      rec(b + 1, budget - 2 * n);
    }
    cur.erase(b);
  };
  rec(1, dim);
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------- QFiltration

QFiltration::QFiltration(Field field, int dim) : field_(field), dim_(dim), first_(0) {
  levels_.push_back(Subspace::whole(field_, dim_));
  levels_.push_back(zero_space(field_, dim_));
  if (dim_ == 0) levels_.pop_back();
}

QFiltration QFiltration::from_levels(int start, const std::vector<Subspace>& levels) {
  if (levels.empty()) throw ConstructionError("filtration needs at least one level");
  const Field f = levels.front().field();
  const int d = levels.front().ambient_dim();
  const Subspace whole = Subspace::whole(f, d);
  const Subspace zero = zero_space(f, d);
  Subspace prev = whole;
  for (const auto& l : levels) {
    if (l.ambient_dim() != d) throw DimensionMismatch("filtration levels have different ambients");
    if (!prev.contains(l)) throw ContainmentViolation("filtration levels do not decrease");
    prev = l;
  }
  QFiltration out(f, d);
  std::size_t i = 0;
  int a = start - 1;  // V^{>=a} = V
  while (i < levels.size() && levels[i] == whole) {
    ++i;
    ++a;
  }
  out.first_ = a;
  out.levels_.assign(1, whole);
  if (d == 0) return out;
  for (; i < levels.size() && !levels[i].is_zero(); ++i) out.levels_.push_back(levels[i]);
  out.levels_.push_back(zero);
  return out;
}

Subspace QFiltration::at(int a) const {
  if (a <= first_) return levels_.front();
  if (a >= zero_from()) return levels_.back();
  return levels_[static_cast<std::size_t>(a - first_)];
}

Profile QFiltration::profile() const {
  std::map<int, int> f;
  for (int a = first_; a < zero_from(); ++a) f[a] = at(a).dim() - at(a + 1).dim();
  return Profile(f);
}

bool QFiltration::is_q_filtration(const QuadraticSpace& space) const {
  if (space.dim() != dim_) throw DimensionMismatch("filtration does not match the space");
  if (!space.q_vanishes_on(at(1))) return false;
  const int bound = std::max(top(), 1 - first_) + 1;
  for (int a = 1; a <= bound; ++a)
    if (!(perp(at(a), space.polar()) == at(1 - a))) return false;
  return true;
}

QFiltration QFiltration::transported(const Matrix& g) const {
  std::vector<Subspace> ls;
  for (const auto& l : levels_) ls.push_back(l.image(g));
  return from_levels(first_, ls);
}

bool QFiltration::operator==(const QFiltration& o) const {
  return dim_ == o.dim_ && first_ == o.first_ && levels_ == o.levels_;
}

bool QFiltration::operator<(const QFiltration& o) const {
  if (first_ != o.first_) return first_ < o.first_;
  return levels_ < o.levels_;
}

// ---------------------------------------------------------------- OGoodGrading

OGoodGrading::OGoodGrading(Field field, int dim, std::map<int, Subspace> pieces)
    : field_(field), dim_(dim), basis_(field, 0, dim), basis_inv_(field, 0, 0) {
  std::vector<Vec> rows;
  for (auto& [a, s] : pieces) {
    if (s.ambient_dim() != dim) throw DimensionMismatch("grading piece has the wrong ambient");
    if (s.is_zero()) continue;
    pieces_.insert_or_assign(a, s);
    for (const auto& v : s.basis_vectors()) {
      rows.push_back(v);
      degrees_.push_back(a);
    }
  }
  if (static_cast<int>(rows.size()) != dim) throw NotOGood("pieces do not add up to the dimension");
  basis_ = Matrix::from_rows(field, dim, rows);
  auto inv = inverse(basis_);
  if (!inv) throw NotOGood("pieces do not form a direct sum");
  basis_inv_ = *inv;
}

Subspace OGoodGrading::piece(int a) const {
  auto it = pieces_.find(a);
  return it == pieces_.end() ? zero_space(field_, dim_) : it->second;
}

int OGoodGrading::top() const { return pieces_.empty() ? 0 : std::max(0, pieces_.rbegin()->first); }

QFiltration OGoodGrading::filtration() const {
  if (pieces_.empty()) return QFiltration(field_, dim_);
  const int lo = pieces_.begin()->first;
  const int hi = pieces_.rbegin()->first;
  std::vector<Subspace> ls;
  for (int a = lo; a <= hi + 1; ++a) {
    Subspace s = zero_space(field_, dim_);
    for (auto& [b, p] : pieces_)
      if (b >= a) s = s + p;
    ls.push_back(s);
  }
  return QFiltration::from_levels(lo, ls);
}

Profile OGoodGrading::profile() const {
  std::map<int, int> f;
  for (auto& [a, s] : pieces_) f[a] = s.dim();
  return Profile(f);
}

void OGoodGrading::validate(const QuadraticSpace& space) const {
  if (space.dim() != dim_) throw DimensionMismatch("grading does not match the space");
  const int n = top();
  for (int a = -n - 1; a <= n + 1; ++a) {
    if (piece(a).dim() != piece(-a).dim()) throw NotOGood("dim V^a != dim V^-a");
    if (a % 2 != 0 && piece(a).dim() % 2 != 0) throw NotOGood("odd piece of odd dimension");
    if (a >= 0 && piece(-a).dim() < piece(-a - 2).dim()) throw NotOGood("piece dimensions are not unimodal");
    if (a != 0 && !space.q_vanishes_on(piece(a))) throw NotOGood("Q does not vanish on a nonzero-degree piece");
  }
  for (auto& [a, s] : pieces_)
    for (auto& [b, t] : pieces_)
      if (a + b != 0 && !space.beta_vanishes_on(s, t)) throw NotOGood("beta pairs pieces of degrees not summing to 0");
}

// ---------------------------------------------------------------- splitting

namespace {

OGoodGrading split_once(const QuadraticSpace& space, const QFiltration& f, Rng* rng) {
  const Field& fld = space.field();
  const int d = space.dim();
  const int n = f.top();
  std::map<int, Subspace> pieces;
  if (n <= 0) {
    pieces.emplace(0, Subspace::whole(fld, d));
    return OGoodGrading(fld, d, pieces);
  }
  std::vector<Vec> p;
  std::vector<int> pdeg;
  for (int a = n; a >= 1; --a) {
    const Subspace c = rng ? complement(f.at(a + 1), f.at(a), *rng) : complement(f.at(a + 1), f.at(a));
    pieces.emplace(a, c);
    for (const auto& v : c.basis_vectors()) {
      p.push_back(v);
      pdeg.push_back(a);
    }
  }
  const int k = static_cast<int>(p.size());
  std::vector<Vec> q;
  for (int i = 0; i < k; ++i) {
    std::vector<Vec> rows;
    for (const auto& pj : p) rows.push_back(space.beta_row(pj));
    for (const auto& ql : q) rows.push_back(space.beta_row(ql));
    const Matrix sys = Matrix::from_rows(fld, d, rows);
    Vec rhs = vec::zero(sys.rows());
    rhs[i] = 1;
    auto x = solve(sys, rhs);
    if (!x) throw NotOGood("no dual vector for the positive part");
    if (rng) {
      const Matrix ker = kernel_basis(sys);
      const Vec c = vec::random(fld, ker.rows(), *rng);
      for (int r = 0; r < ker.rows(); ++r) vec::axpy(fld, *x, c[r], ker.row(r));
    }
    vec::axpy(fld, *x, fld.neg(space.q(*x)), p[i]);
    q.push_back(*x);
  }
  for (int a = 1; a <= n; ++a) {
    std::vector<Vec> gens;
    for (int i = 0; i < k; ++i)
      if (pdeg[i] == a) gens.push_back(q[i]);
    pieces.emplace(-a, Subspace::span(fld, d, gens));
  }
  std::vector<Vec> all = p;
  all.insert(all.end(), q.begin(), q.end());
  pieces.emplace(0, perp(Subspace::span(fld, d, all), space.polar()));

  OGoodGrading g(fld, d, pieces);
  g.validate(space);
  if (!(g.filtration() == f)) throw NotOGood("split grading does not induce the filtration");
  return g;
}

}  // namespace

OGoodGrading split_filtration(const QuadraticSpace& space, const QFiltration& f, Rng* rng) {
  if (space.dim() != f.dim()) throw DimensionMismatch("filtration does not match the space");
  if (!f.is_q_filtration(space)) throw NotOGood("not a Q-filtration");
  try {
    return split_once(space, f, rng);
  } catch (const NotOGood&) {
    if (rng) throw;
  }
  Rng retry(0x5eedULL);
  for (int t = 0;; ++t) {
    try {
      return split_once(space, f, &retry);
    } catch (const NotOGood&) {
      if (t == 15) throw;
    }
  }
}

OGoodGrading standard_grading(const QuadraticSpace& space, const Profile& p) {
  if (!space.is_standard()) throw ConstructionError("standard grading needs a standard space");
  if (!p.is_admissible(space.dim())) throw NotOGood("profile is not admissible: " + p.to_string());
  const Field& fld = space.field();
  const int d = space.dim();
  const int N = space.rank_param();
  std::vector<int> pos;
  for (int a = p.top(); a >= 1; --a)
    for (int t = 0; t < p.at(a); ++t) pos.push_back(a);
  std::map<int, std::vector<Vec>> gens;
  std::vector<int> deg(d, 0);
  for (std::size_t t = 0; t < pos.size(); ++t) {
    const int label = N - static_cast<int>(t);
    deg[space.index(label)] = pos[t];
    deg[space.index(-label)] = -pos[t];
  }
  for (int i = 0; i < d; ++i) gens[deg[i]].push_back(vec::unit(d, i));
  std::map<int, Subspace> pieces;
  for (auto& [a, vs] : gens) pieces.emplace(a, Subspace::span(fld, d, vs));
  OGoodGrading g(fld, d, pieces);
  g.validate(space);
  return g;
}

// ---------------------------------------------------------------- graded forms

bool eta_vanishing(const QFiltration& f, const AlternatingForm& b) {
  if (f.dim() != b.dim()) throw DimensionMismatch("form does not match the filtration");
  for (int a = f.first(); a <= f.zero_from(); ++a) {
    const Subspace x = f.at(a);
    const Subspace y = f.at(-1 - a);
    if (x.dim() == 0 || y.dim() == 0) continue;
    if (!(x.basis() * b.gram() * y.basis().transpose()).is_zero()) return false;
  }
  return true;
}

AlternatingForm bar_form(const QFiltration& f, const OGoodGrading& g, const AlternatingForm& b) {
  if (!eta_vanishing(f, b)) throw NotInEta("beta_xi(V^{>=a}, V^{>=b}) != 0 for some a + b >= -1");
  const Matrix& m = g.graded_basis();
  Matrix bg = m * b.gram() * m.transpose();
  const auto& deg = g.degrees();
  for (int i = 0; i < bg.rows(); ++i)
    for (int j = 0; j < bg.cols(); ++j)
      if (deg[i] + deg[j] != -2) bg(i, j) = 0;
  const Matrix& mi = g.graded_basis_inverse();
  return AlternatingForm(mi * bg * mi.transpose());
}

bool is_graded_form(const OGoodGrading& g, const AlternatingForm& b) {
  if (g.dim() != b.dim()) throw DimensionMismatch("form does not match the grading");
  const Matrix& m = g.graded_basis();
  const Matrix bg = m * b.gram() * m.transpose();
  const auto& deg = g.degrees();
  for (int i = 0; i < bg.rows(); ++i)
    for (int j = 0; j < bg.cols(); ++j)
      if (deg[i] + deg[j] != -2 && bg(i, j) != 0) return false;
  return true;
}

Matrix graded_map(const QuadraticSpace& space, const OGoodGrading& g, const AlternatingForm& b) {
  const Field& fld = space.field();
  const int d = space.dim();
  const bool char2 = fld.characteristic() == 2;
  const Matrix& m = g.graded_basis();
  std::vector<Vec> images;
  for (int r = 0; r < d; ++r) {
    const int a = g.degrees()[r];
    const Subspace target = g.piece(a + 2);
    if (target.dim() == 0 || (a == -2 && char2)) {
      images.push_back(vec::zero(d));
      continue;
    }
    const Subspace pair = g.piece(-a - 2);
    const Matrix pm = pair.basis() * space.polar() * target.basis().transpose();
    const Vec x = m.row_vec(r);
    Vec rhs(pair.dim());
    for (int j = 0; j < pair.dim(); ++j) rhs[j] = b(x, pair.basis().row(j));
    auto c = solve(pm, rhs);
    if (!c || rank(pm) != target.dim()) throw InternalInvariantViolation("graded pairing is degenerate");
    images.push_back(target.basis().transpose().apply(*c));
  }
  const Matrix y = Matrix::from_rows(fld, d, images);
  return (g.graded_basis_inverse() * y).transpose();
}

S2Conditions s2_conditions(const QuadraticSpace& space, const OGoodGrading& g, const AlternatingForm& bbar) {
  if (!is_graded_form(g, bbar)) throw NotGraded("form is not graded of degree -2");
  const Field& fld = space.field();
  const Matrix a = graded_map(space, g, bbar);
  const int top = g.top();
  S2Conditions s;
  for (int j = 0; 2 * j + 2 <= top; ++j)
    if (image_rank(a, g.piece(2 * j)) != g.piece(2 * j + 2).dim()) s.a_surjective = false;
  for (int n = 1; n <= top / 2 + 1; ++n)
    if (!q_nondegenerate_on(space, kernel_within(a.pow(n), g.piece(0)))) s.a_nondegenerate = false;
  for (int n = 1; 2 * n - 1 <= top; ++n)
    if (image_rank(a.pow(2 * n - 1), g.piece(-2 * n + 1)) != g.piece(2 * n - 1).dim()) s.b_prime = false;
  for (int j = 0; 2 * j + 1 <= top; ++j)
    if (image_rank(a, g.piece(2 * j - 1)) != g.piece(2 * j + 1).dim()) s.b_kernel_form = false;
  const Matrix odd_form = a.transpose() * space.polar();
  for (int n = 1; n <= (top + 1) / 2 + 1; ++n) {
    const Subspace k = kernel_within(a.pow(n), g.piece(-1));
    if (k.dim() > 0 && rank(gram_on(odd_form, k)) != k.dim()) s.b_kernel_form = false;
  }
  if (fld.characteristic() != 2) {
    bool ap = true;
    for (int n = 1; 2 * n <= top; ++n)
      if (image_rank(a.pow(2 * n), g.piece(-2 * n)) != g.piece(2 * n).dim()) ap = false;
    s.a_prime = ap;
  }
  return s;
}

bool in_S2_0(const QuadraticSpace& space, const OGoodGrading& g, const AlternatingForm& bbar) {
  const S2Conditions s = s2_conditions(space, g, bbar);
  if (s.a_prime && *s.a_prime != s.a()) throw InternalInvariantViolation("conditions (a) and (a') disagree");
  return s.a() && s.b_prime;
}

bool in_eta(const QuadraticSpace& space, const QFiltration& f, const AlternatingForm& b, Rng* rng) {
  if (!f.is_q_filtration(space)) return false;
  if (!eta_vanishing(f, b)) return false;
  std::optional<OGoodGrading> g;
  try {
    g.emplace(split_filtration(space, f, rng));
  } catch (const NotOGood&) {
    return false;
  }
  return in_S2_0(space, *g, bar_form(f, *g, b));
}

// ---------------------------------------------------------------- bar decomposition

BarData bar_decomposition(const QuadraticSpace& space, const OGoodGrading& g, const AlternatingForm& bbar) {
  const Field& fld = space.field();
  if (fld.characteristic() != 2) throw CharacteristicError("bar decomposition is defined in characteristic 2");
  if (!is_graded_form(g, bbar)) throw NotGraded("form is not graded of degree -2");
  const int d = space.dim();
  const int top = g.top();
  const Matrix a = graded_map(space, g, bbar);
  BarData out{0, {}, {}, {}, Matrix(fld, d, d)};

  const Vec r = space.normalized_radical();
  if (!g.piece(0).contains(r)) throw InternalInvariantViolation("radical is not in V^0");
  std::vector<Vec> powers{r};
  while (true) {
    Vec nx = a.apply(powers.back());
    if (vec::is_zero(nx)) break;
    if (static_cast<int>(powers.size()) > d) throw InternalInvariantViolation("A is not nilpotent on the radical");
    powers.push_back(nx);
  }
  const int mb = static_cast<int>(powers.size()) - 1;
  out.mbar = mb;
  // vbar_i = A^{mbar-i} vbar_mbar
  for (int i = 0; i <= mb; ++i) out.vbar.push_back(powers[mb - i]);

  for (auto& [deg, s] : g.pieces()) out.wbar.insert_or_assign(deg, s);
  if (mb == 0) {
    out.wbar.insert_or_assign(0, complement(Subspace::span(fld, d, {r}), g.piece(0)));
  } else {
    const Subspace start = g.piece(-2 * mb);
    Matrix sys(fld, 1, start.dim());
    for (int k = 0; k < start.dim(); ++k) sys(0, k) = space.beta(start.basis().row(k), out.vbar[0]);
    auto c = solve(sys, Vec{1});
    if (!c) throw InternalInvariantViolation("no ubar_0 pairing with vbar_0");
    Vec u = start.basis().transpose().apply(*c);
    for (int i = 0; i < mb; ++i) {
      out.ubar.push_back(u);
      u = a.apply(u);
    }
    for (int i = 1; i <= mb; ++i) {
      const Matrix lo = Matrix::from_rows(fld, d, {space.beta_row(out.vbar[mb - i])});
      const Matrix hi = Matrix::from_rows(fld, d, {space.beta_row(out.ubar[mb - i])});
      out.wbar.insert_or_assign(-2 * i, kernel_within(lo, g.piece(-2 * i)));
      out.wbar.insert_or_assign(2 * i, kernel_within(hi, g.piece(2 * i)));
    }
    const Matrix w0 = Matrix::from_rows(fld, d, {bbar.gram().apply(out.ubar[mb - 1])});
    out.wbar.insert_or_assign(0, kernel_within(w0, g.piece(0)));
  }
  auto wpiece = [&](int deg) {
    auto it = out.wbar.find(deg);
    return it == out.wbar.end() ? zero_space(fld, d) : it->second;
  };

  // Abar on the basis of V = span vbar + span ubar + Wbar.
  std::vector<Vec> basis;
  std::vector<Vec> images;
  for (const auto& v : out.vbar) {
    basis.push_back(v);
    images.push_back(vec::zero(d));
  }
  for (const auto& u : out.ubar) {
    basis.push_back(u);
    images.push_back(vec::zero(d));
  }
  const Subspace w0 = wpiece(0);
  for (auto& [deg, s] : out.wbar) {
    for (const auto& w : s.basis_vectors()) {
      basis.push_back(w);
      if (deg != -2) {
        images.push_back(a.apply(w));
        continue;
      }
      if (w0.dim() == 0) {
        images.push_back(vec::zero(d));
        continue;
      }
      const Matrix pm = gram_on(space.polar(), w0);
      Vec rhs(w0.dim());
      for (int j = 0; j < w0.dim(); ++j) rhs[j] = bbar(w, w0.basis().row(j));
      auto c = solve(pm, rhs);
      if (!c || rank(pm) != w0.dim()) throw InternalInvariantViolation("beta is degenerate on Wbar^0");
      images.push_back(w0.basis().transpose().apply(*c));
    }
  }
  const Matrix mb_rows = Matrix::from_rows(fld, d, basis);
  auto inv = inverse(mb_rows);
  if (!inv) throw InternalInvariantViolation("vbar, ubar and Wbar do not span V");
  out.abar = (*inv * Matrix::from_rows(fld, d, images)).transpose();

  for (auto& [deg, s] : out.wbar) {
    const Subspace next = wpiece(deg + 2);
    for (const auto& w : s.basis_vectors()) {
      const Vec aw = out.abar.apply(w);
      if (!next.contains(aw)) throw InternalInvariantViolation("Abar does not raise degree by 2 on Wbar");
      for (const auto& t : out.wbar) {
        if (t.first != -deg - 2) continue;
        for (const auto& v : t.second.basis_vectors())
          if (space.beta(aw, v) != bbar(w, v)) throw InternalInvariantViolation("beta(Abar w, v) != bbar(w, v)");
      }
    }
  }

  for (int n = 1; n <= mb; ++n) {
    const Subspace src = wpiece(-2 * n);
    const Subspace img = src.image(out.abar.pow(n));
    if (img.dim() != src.dim() || !q_nondegenerate_on(space, img)) out.a1 = false;
  }
  for (int n = mb + 1; 2 * n <= top; ++n) {
    const Subspace src = wpiece(-2 * n);
    const Subspace dst = wpiece(2 * n);
    if (src.dim() != dst.dim() || image_rank(out.abar.pow(2 * n), src) != dst.dim() || dst.dim() % 2 != 0)
      out.a2 = false;
  }
  return out;
}

// ---------------------------------------------------------------- enumeration

std::vector<AlternatingForm> enumerate_graded_forms(const OGoodGrading& g) {
  const Field& fld = g.field();
  const int d = g.dim();
  const auto& deg = g.degrees();
  std::vector<std::pair<int, int>> slots;  // (i, j) with i > j in graded coordinates
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < i; ++j)
      if (deg[i] + deg[j] == -2) slots.push_back({i, j});
  const std::uint64_t q = fld.order();
  std::uint64_t count = 1;
  for (std::size_t t = 0; t < slots.size(); ++t) {
    count *= q;
    if (count > (1ULL << 22)) throw SizeError("too many graded forms to enumerate");
  }
  const Matrix& mi = g.graded_basis_inverse();
  std::vector<AlternatingForm> out;
  out.reserve(count);
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    Matrix bg(fld, d, d);
    std::uint64_t r = idx;
    for (auto [i, j] : slots) {
      const Elem c = static_cast<Elem>(r % q);
      r /= q;
      bg(i, j) = c;
      bg(j, i) = fld.neg(c);
    }
    out.emplace_back(mi * bg * mi.transpose());
  }
  return out;
}

std::vector<QFiltration> enumerate_q_filtrations(const QuadraticSpace& space) {
  const Field& fld = space.field();
  const int d = space.dim();
  if (d > 7) throw SizeError("filtration enumeration is limited to dimension 7");
  std::map<int, std::vector<Subspace>> singular;
  auto singular_of_dim = [&](int k) -> const std::vector<Subspace>& {
    auto it = singular.find(k);
    if (it != singular.end()) return it->second;
    std::vector<Subspace> keep;
    for (auto& s : enumerate_subspaces(fld, d, k))
      if (space.q_vanishes_on(s)) keep.push_back(s);
    return singular.emplace(k, std::move(keep)).first->second;
  };

  std::vector<QFiltration> out;
  for (const Profile& p : admissible_profiles(d)) {
    const int n = p.top();
    if (n == 0) {
      out.push_back(QFiltration(fld, d));
      continue;
    }
    std::vector<int> dims(n + 2, 0);  // dims[a] = dim V^{>=a}, a in [1, n+1]
    for (int a = n; a >= 1; --a) dims[a] = dims[a + 1] + p.at(a);
    std::vector<Subspace> chain;  // V^{>=1}, V^{>=2}, ...
    std::function<void(int)> rec = [&](int a) {
      if (a > n) {
        std::vector<Subspace> levels;
        for (int b = 1 - n; b <= 0; ++b) levels.push_back(perp(chain[-b], space.polar()));
        for (int b = 1; b <= n; ++b) levels.push_back(chain[b - 1]);
        levels.push_back(zero_space(fld, d));
        QFiltration f = QFiltration::from_levels(1 - n, levels);
        if (!(f.profile() == p)) return;
        try {
          split_filtration(space, f);
        } catch (const NotOGood&) {
          return;
        }
        out.push_back(std::move(f));
        return;
      }
      if (a == 1) {
        for (const auto& s : singular_of_dim(dims[1])) {
          chain.push_back(s);
          rec(2);
          chain.pop_back();
        }
        return;
      }
      const Subspace prev = chain.back();
      for (const auto& c : enumerate_subspaces(fld, prev.dim(), dims[a])) {
        chain.push_back(c.dim() == 0 ? zero_space(fld, d) : Subspace::span(c.basis() * prev.basis()));
        rec(a + 1);
        chain.pop_back();
      }
    };
    rec(1);
  }
  return out;
}

}  // namespace nilpiece
