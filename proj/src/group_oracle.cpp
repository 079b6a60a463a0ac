#include "nilpiece/group_oracle.hpp"

#include <algorithm>
#include <exception>
#include <thread>

#include "nilpiece/errors.hpp"

namespace nilpiece {
namespace {

void check_guard(const QuadraticSpace& space) {
  if (space.dim() > 5 || space.field().order() > 4) throw SizeError("isometry enumeration is limited to dim <= 5, q <= 4");
}

// Isometries whose first column is in `firsts`.
void backtrack(const QuadraticSpace& space, const std::vector<Vec>& pool, const std::vector<Elem>& qpool,
               const std::vector<Vec>& firsts, std::vector<Matrix>& out) {
  const Field& fld = space.field();
  const int d = space.dim();
  std::vector<Vec> cols;
  std::vector<Vec> brows;  // beta(col_i, .)
  auto rec = [&](auto&& self, int j) -> void {
    if (j == d) {
      Matrix g = Matrix::from_columns(fld, d, cols);
      if (rank(g) == d) out.push_back(std::move(g));
      return;
    }
    const Vec ej = vec::unit(d, j);
    const Elem qj = space.q(ej);
    const auto& cand = j == 0 ? firsts : pool;
    for (std::size_t t = 0; t < cand.size(); ++t) {
      const Vec& x = cand[t];
      if ((j == 0 ? space.q(x) : qpool[t]) != qj) continue;
      bool ok = true;
      for (int i = 0; i < j && ok; ++i) {
        Elem s = 0;
        for (int c = 0; c < d; ++c) s = fld.add(s, fld.mul(brows[i][c], x[c]));
        ok = s == space.polar()(i, j);
      }
      if (!ok) continue;
      cols.push_back(x);
      if (rank_of(fld, d, cols) != j + 1) {
        cols.pop_back();
        continue;
      }
      brows.push_back(space.beta_row(x));
      self(self, j + 1);
      brows.pop_back();
      cols.pop_back();
    }
  };
  rec(rec, 0);
}

}  // namespace

IsometryGroup::IsometryGroup(QuadraticSpace space, std::vector<Matrix> all)
    : space_(std::move(space)), all_(std::move(all)) {
  std::sort(all_.begin(), all_.end());
  const bool char2 = space_.field().characteristic() == 2;
  for (const auto& g : all_)
    if (char2 || determinant(g) == 1) so_.push_back(g);
}

IsometryGroup enumerate_isometries(const QuadraticSpace& space, bool force, int jobs) {
  check_guard(space);
  const Field& fld = space.field();
  const int d = space.dim();
  const int q = fld.order();
  if (!force && d == 5 && q == 4) throw SizeError("O(5, 4) has about 10^6 elements; pass force to enumerate it");
  std::vector<Vec> pool;
  std::vector<Elem> qpool;
  int total = 1;
  for (int i = 0; i < d; ++i) total *= q;
  for (int idx = 0; idx < total; ++idx) {
    Vec v(d);
    int r = idx;
    for (int c = 0; c < d; ++c) {
      v[c] = static_cast<Elem>(r % q);
      r /= q;
    }
    qpool.push_back(space.q(v));
    pool.push_back(std::move(v));
  }
  std::vector<Vec> firsts;
  const Elem q0 = space.q(vec::unit(d, 0));
  for (std::size_t t = 0; t < pool.size(); ++t)
    if (qpool[t] == q0 && !vec::is_zero(pool[t])) firsts.push_back(pool[t]);

  jobs = std::max(1, std::min<int>(jobs, static_cast<int>(firsts.size())));
  std::vector<std::vector<Matrix>> parts(jobs);
  std::vector<std::exception_ptr> errors(jobs);
  std::vector<std::thread> workers;
  for (int w = 0; w < jobs; ++w) {
    workers.emplace_back([&, w] {
      try {
        std::vector<Vec> mine;
        for (std::size_t t = w; t < firsts.size(); t += jobs) mine.push_back(firsts[t]);
        backtrack(space, pool, qpool, mine, parts[w]);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : workers) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<Matrix> all;
  for (auto& p : parts)
    for (auto& g : p) all.push_back(std::move(g));
  return IsometryGroup(space, std::move(all));
}

AlternatingForm transport_form(const Matrix& g, const AlternatingForm& b) {
  auto inv = inverse(g);
  if (!inv) throw ConstructionError("transport by a singular matrix");
  return AlternatingForm(inv->transpose() * b.gram() * *inv);
}

std::vector<Matrix> centralizer(const IsometryGroup& group, const AlternatingForm& b) {
  if (b.dim() != group.space().dim()) throw DimensionMismatch("form does not match the group");
  std::vector<Matrix> out;
  // g.B = B  <=>  g^T B g = B
  for (const auto& g : group.elements())
    if (g.transpose() * b.gram() * g == b.gram()) out.push_back(g);
  return out;
}

bool stabilizes_filtration(const Matrix& g, const QFiltration& f) {
  for (const auto& l : f.levels())
    if (!(l.image(g) == l)) return false;
  return true;
}

Prop2Report verify_prop2(const IsometryGroup& group, const QFiltration& f) {
  const QuadraticSpace& space = group.space();
  check_guard(space);
  const OGoodGrading g = split_filtration(space, f);
  std::vector<Matrix> stab;
  for (const auto& x : group.elements())
    if (stabilizes_filtration(x, f)) stab.push_back(x);
  Prop2Report rep;
  rep.profile = f.profile();
  for (const auto& b : enumerate_graded_forms(g)) {
    bool inside = true;
    for (const auto& z : centralizer(group, b))
      if (!std::binary_search(stab.begin(), stab.end(), z)) {
        inside = false;
        break;
      }
    const bool s2 = in_S2_0(space, g, b);
    ++rep.forms_checked;
    if (s2) ++rep.in_s2_0_count;
    if (inside != s2) rep.mismatches.push_back({b, inside, s2});
  }
  return rep;
}

Prop2Report verify_prop2(const QuadraticSpace& space, const QFiltration& f) {
  check_guard(space);
  return verify_prop2(enumerate_isometries(space), f);
}

}  // namespace nilpiece
