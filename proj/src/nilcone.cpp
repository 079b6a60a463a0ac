#include "nilpiece/nilcone.hpp"

#include "nilpiece/errors.hpp"
#include "nilpiece/group_oracle.hpp"

namespace nilpiece {
namespace {

// beta_xi(x, .) as a row of coefficients.
Vec xi_row(const AlternatingForm& b, std::span<const Elem> x) { return b.gram().transpose().apply(x); }

// Solution x of beta(x, .) = phi corrected by a multiple of the normalized
// radical vector so that Q(x) = 0.
std::optional<Vec> solve_singular(const QuadraticSpace& space, std::span<const Elem> phi,
                                  std::span<const Elem> vm) {
  auto x = space.solve_beta(phi);
  if (!x) return std::nullopt;
  vec::axpy(space.field(), *x, space.field().sqrt_char2(space.q(*x)), vm);
  return x;
}

void require(bool ok, const char* what) {
  if (!ok) throw InternalInvariantViolation(what);
}

}  // namespace

Vec ChainData::w_vector(std::span<const Elem> coords) const {
  return w_basis.transpose().apply(coords);
}

Subspace ChainData::t_power_image(int e, const Subspace& domain) const {
  const Field& fld = W.field();
  const Matrix te = T.pow(e);
  std::vector<Vec> gens;
  for (int i = 0; i < domain.dim(); ++i) {
    const Vec c = W.dim() == 0 ? Vec{} : W.coordinates(domain.basis().row(i));
    gens.push_back(w_vector(te.apply(c)));
  }
  return Subspace::span(fld, W.ambient_dim(), gens);
}

std::optional<VChain> extract_v_chain(const QuadraticSpace& space, const AlternatingForm& b) {
  if (space.field().characteristic() != 2) throw CharacteristicError("v-chain is defined in characteristic 2");
  if (b.dim() != space.dim()) throw DimensionMismatch("form does not match the space");
  const Field& f = space.field();
  const int d = space.dim();
  const Vec vm = space.normalized_radical();
  std::vector<Vec> rev{vm};
  while (true) {
    const Vec phi = xi_row(b, rev.back());
    if (vec::is_zero(phi)) break;
    if (static_cast<int>(rev.size()) > d) return std::nullopt;
    auto x = solve_singular(space, phi, vm);
    if (!x) return std::nullopt;
    rev.push_back(*x);
    if (rank_of(f, d, rev) != static_cast<int>(rev.size())) return std::nullopt;
  }
  VChain c;
  c.m = static_cast<int>(rev.size()) - 1;
  c.v.assign(rev.rbegin(), rev.rend());
  return c;
}

std::optional<ChainData> extract_chain(const QuadraticSpace& space, const AlternatingForm& b,
                                       const ChainOptions& options) {
  auto vc = extract_v_chain(space, b);
  if (!vc) return std::nullopt;
  const Field& fld = space.field();
  const int d = space.dim();
  const int m = vc->m;
  const Vec& vm = vc->v[m];

  ChainData c{m, vc->v, {}, Subspace(fld, d), Matrix(fld, 0, d), Matrix(fld, 0, 0)};

  if (m == 0) {
    const Subspace line = Subspace::span(fld, d, {vm});
    const Subspace whole = Subspace::whole(fld, d);
    c.W = options.rng ? complement(line, whole, *options.rng) : complement(line, whole);
  } else {
    // u_0: beta(u_0, v_0) = 1, beta(u_0, v_i) = 0 for i in [1, m-1], Q(u_0) = 0.
    Matrix sys(fld, m, d);
    for (int i = 0; i < m; ++i) {
      const Vec row = space.beta_row(c.v[i]);
      for (int j = 0; j < d; ++j) sys(i, j) = row[j];
    }
    Vec rhs = vec::zero(m);
    rhs[0] = 1;
    auto u0 = solve(sys, rhs);
    if (!u0) return std::nullopt;
    if (options.rng) {
      const Matrix ker = kernel_basis(sys);
      const Vec coeff = vec::random(fld, ker.rows(), *options.rng);
      for (int i = 0; i < ker.rows(); ++i) vec::axpy(fld, *u0, coeff[i], ker.row(i));
    }
    vec::axpy(fld, *u0, fld.sqrt_char2(space.q(*u0)), vm);
    c.u.push_back(*u0);
    for (int i = 1; i < m; ++i) {
      auto ui = solve_singular(space, xi_row(b, c.u.back()), vm);
      if (!ui) return std::nullopt;
      c.u.push_back(*ui);
    }
    // W = {v : beta(v, v_i) = beta(v, u_i) = 0, i in [0, m-1], beta_xi(v, u_{m-1}) = 0}.
    std::vector<Vec> rows;
    for (int i = 0; i < m; ++i) rows.push_back(space.beta_row(c.v[i]));
    for (int i = 0; i < m; ++i) rows.push_back(space.beta_row(c.u[i]));
    rows.push_back(b.gram().apply(c.u[m - 1]));
    c.W = Subspace::span(kernel_basis(Matrix::from_rows(fld, d, rows)));
  }

  std::vector<Vec> all = c.v;
  all.insert(all.end(), c.u.begin(), c.u.end());
  for (const auto& w : c.W.basis_vectors()) all.push_back(w);
  if (static_cast<int>(all.size()) != d || rank_of(fld, d, all) != d) return std::nullopt;

  c.w_basis = c.W.basis();
  const int k = c.W.dim();
  if (k > 0) {
    const Matrix gw = c.w_basis * space.polar() * c.w_basis.transpose();
    const Matrix bw = c.w_basis * b.gram() * c.w_basis.transpose();
    auto gw_inv = inverse(gw);
    if (!gw_inv) return std::nullopt;
    c.T = *gw_inv * bw.transpose();
  }
  c.lambda1 = k == 0 ? 0 : nilpotency_index(c.T);
  if (c.lambda1 < 0) return std::nullopt;

  const Subspace& W = c.W;
  c.f = 0;
  while (!space.q_vanishes_on(c.t_power_image(c.f, W))) ++c.f;
  c.l1 = std::max(c.lambda1 - m, c.f);
  c.rho_zero = true;
  if (c.lambda1 > 0 && c.l1 > 0) {
    const Matrix ker = kernel_basis(c.T.pow(c.lambda1 - 1));
    std::vector<Vec> gens;
    for (int i = 0; i < ker.rows(); ++i) gens.push_back(c.w_vector(ker.row(i)));
    const Subspace kv = Subspace::span(fld, d, gens);
    c.rho_zero = space.q_vanishes_on(c.t_power_image(c.l1 - 1, kv));
  }

  // Defining identities.
  require(space.q(vm) == 1 && vec::is_zero(space.beta_row(vm)), "v_m is not the normalized radical vector");
  require(vec::is_zero(xi_row(b, c.v[0])), "beta_xi(v_0, .) does not vanish");
  for (int i = 1; i <= m; ++i)
    require(xi_row(b, c.v[i]) == space.beta_row(c.v[i - 1]), "chain relation fails");
  for (int i = 0; i < m; ++i) require(space.q(c.v[i]) == 0, "Q(v_i) is nonzero");
  if (m > 0) {
    require(space.beta(c.u[0], c.v[0]) == 1 && space.q(c.u[0]) == 0, "u_0 conditions fail");
    for (int i = 1; i < m; ++i) {
      require(space.beta(c.u[0], c.v[i]) == 0, "u_0 conditions fail");
      require(space.q(c.u[i]) == 0 && space.beta_row(c.u[i]) == xi_row(b, c.u[i - 1]), "u_i relation fails");
    }
  }
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      require(space.beta(c.w_vector(c.T.column(i)), c.w_basis.row(j)) == b(c.w_basis.row(i), c.w_basis.row(j)),
              "T does not represent beta_xi on W");
  require(2 * c.l1 >= c.lambda1 && m >= c.lambda1 - c.l1, "l_1 bounds fail");
  return c;
}

InducedPair induced_pair(const QuadraticSpace& space, const VChain& chain, const AlternatingForm& b) {
  const Field& fld = space.field();
  const int d = space.dim();
  const Subspace L = Subspace::span(fld, d, chain.v);
  const Subspace Lp = perp(L, space.polar());
  QuotientMap qm(Lp, L);
  Matrix g2(fld, 0, 0), b2(fld, 0, 0);
  try {
    g2 = qm.descend_form(space.polar());
    b2 = qm.descend_form(b.gram());
  } catch (const NotWellDefined& e) {
    throw InternalInvariantViolation(std::string("induced pair: ") + e.what());
  }
  QuadraticSpace sub = space.restricted(qm.section());
  AlternatingForm form(b2);
  Matrix T(fld, qm.dim(), qm.dim());
  if (qm.dim() > 0) {
    auto inv = inverse(g2);
    if (!inv) throw InternalInvariantViolation("induced polar form is degenerate");
    T = *inv * b2.transpose();
  }
  std::vector<Vec> vstar(chain.v.begin(), chain.v.end() - 1);
  return InducedPair{std::move(vstar), L, Lp, std::move(qm), std::move(sub), std::move(form), std::move(T)};
}

Matrix form_endomorphism(const QuadraticSpace& space, const AlternatingForm& b) {
  auto inv = inverse(space.polar());
  if (!inv) throw CharacteristicError("polar form is degenerate; use the chain construction");
  return *inv * b.gram().transpose();
}

int nilpotency_index(const Matrix& a) {
  if (a.rows() != a.cols()) throw DimensionMismatch("nilpotency of a non-square matrix");
  Matrix p = Matrix::identity(a.field(), a.rows());
  for (int e = 0; e <= a.rows(); ++e) {
    if (p.is_zero()) return e;
    p = p * a;
  }
  return -1;
}

bool is_nilpotent_matrix(const Matrix& a) { return nilpotency_index(a) >= 0; }

bool is_nilpotent(const QuadraticSpace& space, const AlternatingForm& b) {
  if (b.dim() != space.dim()) throw DimensionMismatch("form does not match the space");
  if (b.is_zero()) return true;
  if (space.field().characteristic() != 2) return is_nilpotent_matrix(form_endomorphism(space, b));
  auto chain = extract_v_chain(space, b);
  if (!chain) return false;
  const InducedPair pair = induced_pair(space, *chain, b);
  return pair.T.rows() == 0 || is_nilpotent_matrix(pair.T);
}

bool good_basis_oracle(const IsometryGroup& group, const AlternatingForm& b) {
  const QuadraticSpace& space = group.space();
  const int d = space.dim();
  const int N = space.rank_param();
  for (const Matrix& g : group.elements()) {
    const Matrix t = g.transpose() * b.gram() * g;
    bool ok = true;
    for (int i = 0; i < d && ok; ++i)
      for (int j = 0; j < d && ok; ++j)
        if ((i - N) + (j - N) >= 0 && t(i, j) != 0) ok = false;
    if (ok) return true;
  }
  return false;
}

bool good_basis_oracle(const QuadraticSpace& space, const AlternatingForm& b) {
  if (!space.is_standard() || (space.dim() != 3 && space.dim() != 5) || space.field().order() > 4)
    throw SizeError("good-basis oracle is limited to dims 3, 5 and q <= 4");
  return good_basis_oracle(enumerate_isometries(space), b);
}

}  // namespace nilpiece
