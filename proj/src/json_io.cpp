#include "nilpiece/json_io.hpp"

#include <iomanip>
#include <sstream>

#include "nilpiece/errors.hpp"

namespace nilpiece {

Json field_to_json(const Field& f) {
  return Json{{"p", f.characteristic()}, {"k", f.degree()}, {"modulus", f.modulus()}};
}

Field field_from_json(const Json& j) {
  try {
    const int p = j.at("p").get<int>();
    const int k = j.at("k").get<int>();
    std::optional<std::vector<int>> modulus;
    if (j.contains("modulus")) modulus = j.at("modulus").get<std::vector<int>>();
    return Field::create(p, k, modulus);
  } catch (const Json::exception& e) {
    throw ParseError(std::string("field: ") + e.what());
  }
}

Json element_to_json(const Field& f, Elem e) { return f.coefficients(e); }

Elem element_from_json(const Field& f, const Json& j) {
  if (j.is_number_integer()) {
    const long long v = j.get<long long>();
    if (v < 0 || v >= f.order()) throw ParseError("element out of range: " + j.dump());
    return static_cast<Elem>(v);
  }
  if (j.is_array()) {
    std::vector<int> c;
    for (const auto& x : j) {
      if (!x.is_number_integer()) throw ParseError("element coefficient is not an integer: " + j.dump());
      c.push_back(x.get<int>());
    }
    if (static_cast<int>(c.size()) > f.degree()) throw ParseError("element has too many coefficients: " + j.dump());
    for (int x : c)
      if (x < 0 || x >= f.characteristic()) throw ParseError("element coefficient out of range: " + j.dump());
    return f.from_coefficients(c);
  }
  throw ParseError("element must be an integer or a coefficient array: " + j.dump());
}

Json vector_to_json(const Field& f, std::span<const Elem> v) {
  Json out = Json::array();
  for (Elem e : v) out.push_back(element_to_json(f, e));
  return out;
}

Json matrix_to_json(const Matrix& m) {
  Json out = Json::array();
  for (int r = 0; r < m.rows(); ++r) out.push_back(vector_to_json(m.field(), m.row(r)));
  return out;
}

Json subspace_to_json(const Subspace& s) { return matrix_to_json(s.basis()); }

Json form_document(const QuadraticSpace& space, const AlternatingForm& b) {
  return Json{{"schema", kSchema},
              {"space", {{"field", field_to_json(space.field())}, {"N", space.rank_param()}}},
              {"form", vector_to_json(space.field(), b.lower())}};
}

std::pair<QuadraticSpace, AlternatingForm> parse_form_document(const Json& j) {
  if (!j.is_object()) throw ParseError("form document must be an object");
  if (j.contains("schema") && j.at("schema") != kSchema) throw ParseError("unsupported schema " + j.at("schema").dump());
  if (!j.contains("space") || !j.contains("form")) throw ParseError("form document needs \"space\" and \"form\"");
  const Json& sp = j.at("space");
  if (!sp.is_object() || !sp.contains("field") || !sp.contains("N")) throw ParseError("space needs \"field\" and \"N\"");
  const Field f = field_from_json(sp.at("field"));
  if (!sp.at("N").is_number_integer()) throw ParseError("N must be an integer");
  const int N = sp.at("N").get<int>();
  if (N < 1 || N > 3) throw SizeError("N must be in [1, 3]");
  const QuadraticSpace space = QuadraticSpace::standard(f, N);
  const Json& lower = j.at("form");
  const int d = space.dim();
  if (!lower.is_array() || static_cast<int>(lower.size()) != d * (d - 1) / 2)
    throw ParseError("form must list " + std::to_string(d * (d - 1) / 2) + " lower-triangle entries");
  std::vector<Elem> entries;
  for (const auto& e : lower) entries.push_back(element_from_json(f, e));
  return {space, AlternatingForm::from_lower(f, d, entries)};
}

AlternatingForm demo_form(const Field& f) {
  // index 0 = e_{-1}, index 1 = e_0
  return AlternatingForm::elementary(f, 3, 0, 1, 1);
}

Json profile_to_json(const Profile& p) {
  Json f = Json::array();
  for (auto [a, n] : p.nonnegative()) f.push_back({a, n});
  return Json{{"f", f}};
}

Json filtration_to_json(const QFiltration& f) {
  Json levels = Json::array();
  for (int a = f.first(); a <= f.zero_from(); ++a) levels.push_back({{"a", a}, {"basis", subspace_to_json(f.at(a))}});
  return Json{{"levels", levels}};
}

Json chain_to_json(const ChainData& c) {
  const Field& f = c.W.field();
  Json v = Json::array(), u = Json::array();
  for (const auto& x : c.v) v.push_back(vector_to_json(f, x));
  for (const auto& x : c.u) u.push_back(vector_to_json(f, x));
  return Json{{"m", c.m},   {"v", v},        {"u", u},   {"W", subspace_to_json(c.W)},
              {"lambda1", c.lambda1}, {"f", c.f}, {"l1", c.l1}, {"rho_zero", c.rho_zero}};
}

Json classification_to_json(const QuadraticSpace& space, const AlternatingForm& b, const ClassificationResult& r,
                            bool explain) {
  Json out = form_document(space, b);
  out["profile"] = profile_to_json(r.profile);
  out["filtration"] = filtration_to_json(r.filtration);
  if (explain) {
    Json trace = Json::array();
    for (const auto& t : r.trace)
      trace.push_back({{"dim", t.dim},
                       {"m", t.m},
                       {"lambda1", t.lambda1},
                       {"l1", t.l1},
                       {"rho_zero", t.rho_zero},
                       {"case", t.case_tag},
                       {"n", t.n}});
    out["trace"] = trace;
    if (space.field().characteristic() == 2 && !b.is_zero()) {
      if (auto c = extract_chain(space, b)) out["chain"] = chain_to_json(*c);
    }
  }
  return out;
}

Json check_to_json(const FormulaCheck& c) {
  return Json{{"name", c.name}, {"expected", c.expected}, {"actual", c.actual}, {"pass", c.pass}};
}

Json check_to_json(const CheckResult& c) { return Json{{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}}; }

Json census_to_json(const CensusReport& r, bool timing) {
  Json tally = Json::array();
  for (const auto& [p, c] : r.tally) tally.push_back({{"profile", profile_to_json(p)}, {"count", c}});
  Json checks = Json::array();
  for (const auto& c : r.checks) checks.push_back(check_to_json(c));
  Json out{{"schema", kSchema},
           {"field", {{"p", r.p}, {"k", r.k}}},
           {"N", r.N},
           {"q", r.q},
           {"total", r.total},
           {"tally", tally},
           {"checks", checks}};
  if (timing) out["elapsed_ms"] = r.elapsed_ms;
  return out;
}

std::string census_table(const CensusReport& r, bool timing) {
  std::ostringstream os;
  os << "census N=" << r.N << " q=" << r.q << " (p=" << r.p << ", k=" << r.k << ")\n";
  std::size_t w = 7;
  for (const auto& [p, c] : r.tally) w = std::max(w, p.to_string().size());
  os << std::left << std::setw(static_cast<int>(w)) << "profile" << "  " << std::right << std::setw(12) << "count" << "\n";
  for (const auto& [p, c] : r.tally)
    os << std::left << std::setw(static_cast<int>(w)) << p.to_string() << "  " << std::right << std::setw(12) << c << "\n";
  os << std::left << std::setw(static_cast<int>(w)) << "total" << "  " << std::right << std::setw(12) << r.total << "\n";
  for (const auto& c : r.checks)
    os << (c.pass ? "PASS " : "FAIL ") << c.name << ": " << c.actual << " (expected " << c.expected << ")\n";
  if (timing) os << "elapsed " << std::fixed << std::setprecision(1) << r.elapsed_ms << " ms\n";
  return os.str();
}

std::string census_csv(const CensusReport& r) {
  std::ostringstream os;
  os << "profile,count\n";
  for (const auto& [p, c] : r.tally) os << '"' << p.to_string() << "\"," << c << "\n";
  return os.str();
}

}  // namespace nilpiece
