#include "nilpiece/classifier.hpp"

#include "nilpiece/errors.hpp"

namespace nilpiece {
namespace {

// {x in D : Q(T^e x) = 0} for a subspace D of W (W-coordinates, rows) on
// which x -> Q(T^e x) is additive.
Matrix q_power_kernel(const QuadraticSpace& space, const ChainData& c, const Matrix& dom, int e) {
  const Field& fld = space.field();
  const Matrix te = c.T.pow(e);
  std::vector<Vec> imgs;
  for (int i = 0; i < dom.rows(); ++i) imgs.push_back(c.w_vector(te.apply(dom.row(i))));
  for (std::size_t i = 0; i < imgs.size(); ++i)
    for (std::size_t j = i + 1; j < imgs.size(); ++j)
      if (space.beta(imgs[i], imgs[j]) != 0) throw InternalInvariantViolation("Q(T^e .) is not additive");
  Matrix row(fld, 1, dom.rows());
  for (int i = 0; i < dom.rows(); ++i) row(0, i) = fld.sqrt_char2(space.q(imgs[i]));
  const Matrix ker = kernel_basis(row);  // coefficient vectors over dom
  if (ker.rows() == 0) return Matrix(fld, 0, dom.cols());
  return ker * dom;
}

std::vector<Vec> to_ambient(const ChainData& c, const Matrix& coords) {
  std::vector<Vec> out;
  for (int i = 0; i < coords.rows(); ++i) out.push_back(c.w_vector(coords.row(i)));
  return out;
}

QFiltration classify_char2(const QuadraticSpace& space, const AlternatingForm& b, const ClassifyOptions& opt,
                           std::vector<TraceLevel>& trace) {
  const Field& fld = space.field();
  const int d = space.dim();
  if (b.is_zero() || d <= 1) return QFiltration(fld, d);
  auto chain = extract_chain(space, b, ChainOptions{opt.rng});
  if (!chain) throw InternalInvariantViolation("chain construction failed on a nilpotent form");
  const HData h = compute_H(space, *chain, b);
  trace.push_back({d, chain->m, chain->lambda1, chain->l1, chain->rho_zero, h.case_tag, h.n});
  const int n = h.n;
  if (n < 1) throw InternalInvariantViolation("nonzero form with n < 1");

  const Subspace L = space.singular_part(perp(h.H, space.polar()));
  if (!h.H.contains(L)) throw InternalInvariantViolation("L is not inside H");
  for (const auto& l : L.basis_vectors())
    if (!vec::is_zero(b.gram().transpose().apply(l))) throw InternalInvariantViolation("beta_xi(L, V) != 0");

  std::optional<QuotientMap> qm;
  if (opt.rng)
    qm.emplace(h.H, L, *opt.rng);
  else
    qm.emplace(h.H, L);
  const QuadraticSpace sub = space.restricted(qm->section());
  const AlternatingForm sub_b(qm->descend_form(b.gram()));
  const QFiltration inner = classify_char2(sub, sub_b, opt, trace);

  std::vector<Subspace> levels;
  for (int a = -n + 1; a <= n; ++a) levels.push_back(qm->lift(inner.at(a)));
  return QFiltration::from_levels(-n + 1, levels);
}

}  // namespace

HData compute_H(const QuadraticSpace& space, const ChainData& c, const AlternatingForm& b) {
  const Field& fld = space.field();
  if (fld.characteristic() != 2) throw CharacteristicError("compute_H is defined in characteristic 2");
  if (b.is_zero()) throw ZeroInput("compute_H needs a nonzero form");
  const int d = space.dim();
  const int m = c.m;
  const int lam = c.lambda1;
  const int l1 = c.l1;
  const int k = c.W.dim();
  const Matrix all_w = Matrix::identity(fld, k);

  // Lambda_W in W-coordinates.
  auto lambda_mid = [&] { return q_power_kernel(space, c, all_w, l1 - 1); };
  auto lambda_rho = [&] {
    const Matrix dom = kernel_basis(c.T.pow(lam - 1));
    if (dom.rows() == 0) return Matrix(fld, 0, k);
    return q_power_kernel(space, c, dom, l1 - 1);
  };

  std::vector<Vec> gens;
  HData out{Subspace(fld, d), "", 0};
  auto add_v_u = [&] {
    for (const auto& v : c.v) gens.push_back(v);
    for (int i = 1; i < m; ++i) gens.push_back(c.u[i]);
  };
  auto add_w = [&](const Matrix& coords) {
    for (auto& v : to_ambient(c, coords)) gens.push_back(std::move(v));
  };

  if (m == 0) {
    if (!(lam == l1 && l1 > 0)) throw InternalInvariantViolation("m = 0 with l_1 != lambda_1");
    gens.push_back(c.v[0]);
    add_w(lambda_rho());
    out.case_tag = "m_zero";
    out.n = lam - 1;
  } else if (m >= l1) {
    add_v_u();
    add_w(all_w);
    out.case_tag = "m_ge_l1";
    out.n = 2 * m;
  } else if (lam - l1 < m) {
    add_v_u();
    add_w(lambda_mid());
    out.case_tag = "mid";
    out.n = l1 + m - 1;
  } else if (m == lam - l1 && m == l1 - 1) {
    add_v_u();
    add_w(lambda_rho());
    out.case_tag = "edge";
    out.n = 2 * m;
  } else if (m == lam - l1 && m < l1 - 1 && !c.rho_zero) {
    add_v_u();
    add_w(lambda_rho());
    out.case_tag = "low_rho_nonzero";
    out.n = l1 + m - 1;
  } else if (m == lam - l1 && m < l1 - 1 && c.rho_zero) {
    add_v_u();
    add_w(lambda_rho());
    // w_*: beta(w_*, w) = sqrt(Q(T^{l1-1} w)) on W; then T^{lambda1-1} w_** = w_*.
    const Matrix gw = c.w_basis * space.polar() * c.w_basis.transpose();
    const Matrix te = c.T.pow(l1 - 1);
    Vec rhs(k);
    for (int j = 0; j < k; ++j) rhs[j] = fld.sqrt_char2(space.q(c.w_vector(te.apply(all_w.row(j)))));
    auto ws = solve(gw.transpose(), rhs);
    if (!ws) throw InternalInvariantViolation("no w_*");
    auto wss = solve(c.T.pow(lam - 1), *ws);
    if (!wss) throw InternalInvariantViolation("w_* is not in the image of T^{lambda_1-1}");
    gens.push_back(vec::add(fld, c.u[0], c.w_vector(*wss)));
    out.case_tag = "low_rho_zero";
    out.n = lam - 1;
  } else {
    throw InternalInvariantViolation("case dispatch fell through");
  }
  out.H = Subspace::span(fld, d, gens);
  return out;
}

QFiltration weight_filtration(const Matrix& a) {
  const Field& fld = a.field();
  const int d = a.rows();
  std::vector<Subspace> im, ker;
  for (int e = 0; e <= d; ++e) {
    const Matrix p = a.pow(e);
    im.push_back(Subspace::whole(fld, d).image(p));
    ker.push_back(Subspace::span(kernel_basis(p)));
  }
  std::vector<Subspace> levels;
  for (int lvl = -d; lvl <= d + 1; ++lvl) {
    Subspace s(fld, d);
    for (int i = 0; i <= d; ++i)
      for (int l = 0; l <= d; ++l)
        if (i - l + 1 >= lvl) s = s + im[i].intersect(ker[l]);
    levels.push_back(s);
  }
  return QFiltration::from_levels(-d, levels);
}

ClassificationResult classify(const QuadraticSpace& space, const AlternatingForm& b, const ClassifyOptions& options) {
  if (b.dim() != space.dim()) throw DimensionMismatch("form does not match the space");
  if (!is_nilpotent(space, b)) throw NotNilpotent("form is not nilpotent");
  const Field& fld = space.field();
  std::vector<TraceLevel> trace;
  QFiltration f(fld, space.dim());
  if (fld.characteristic() == 2) {
    f = classify_char2(space, b, options, trace);
  } else if (!b.is_zero()) {
    f = weight_filtration(form_endomorphism(space, b));
    trace.push_back({space.dim(), 0, 0, 0, true, "weight", f.top()});
  }
  if (!in_eta(space, f, b)) throw InternalInvariantViolation("classified filtration fails the eta test");
  Profile p = f.profile();
  if (!p.is_admissible(space.dim())) throw InternalInvariantViolation("profile is not admissible");
  return ClassificationResult{f, p, trace};
}

}  // namespace nilpiece
