#include "nilpiece/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "nilpiece/errors.hpp"
#include "nilpiece/json_io.hpp"

namespace nilpiece {
namespace {

const char* kErrorHelp =
    "Errors (printed as CODE: message on stderr):\n"
    "  ParseError            malformed JSON or field/form data         exit 2\n"
    "  SizeError             enumeration outside its guard             exit 2\n"
    "  ConstructionError     invalid field, form or profile            exit 2\n"
    "  DimensionMismatch     form does not fit the space               exit 2\n"
    "  FieldMismatch         mixed fields                              exit 2\n"
    "  CharacteristicError   operation undefined in this characteristic exit 2\n"
    "  NotNilpotent          classify on a non-nilpotent form          exit 2\n"
    "  NotOGood / NotInEta / NotGraded / ZeroInput / ContainmentViolation /\n"
    "  NotWellDefined / DivideByZero                                   exit 2\n"
    "  InternalInvariantViolation  a constructed object broke its identities exit 1\n";

struct Common {
  int p = 2;
  int k = 1;
  int N = 1;
  std::string input;
  std::string output;
  std::uint64_t seed = 0;
  bool seeded = false;
  bool explain = false;
  int jobs = 1;
  bool force = false;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--p", c.p, "characteristic")->capture_default_str();
  sub->add_option("--k", c.k, "extension degree")->capture_default_str();
  sub->add_option("--N", c.N, "rank: dim V = 2N+1")->capture_default_str();
  sub->add_option("--input", c.input, "input JSON file (- for stdin)");
  sub->add_option("--output", c.output, "write the report to FILE");
  sub->add_option("--seed", c.seed, "seed for the randomized choice hooks");
  sub->add_flag("--explain", c.explain, "include per-level trace and chain data");
  sub->add_option("--jobs", c.jobs, "worker threads (output does not depend on it)")->capture_default_str();
  sub->add_flag("--force", c.force, "lift conservative size guards (may run for hours)");
}

class Emitter {
 public:
  Emitter(const std::string& path, std::ostream& out) : out_(out) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw ParseError("cannot open output file " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : out_; }

 private:
  std::ostream& out_;
  std::ofstream file_;
};

Json read_json(const std::string& path) {
  std::stringstream buf;
  if (path == "-") {
    buf << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open input file " + path);
    buf << in.rdbuf();
  }
  try {
    return Json::parse(buf.str());
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

int cmd_classify(const Common& c, bool demo, std::ostream& out) {
  std::optional<std::pair<QuadraticSpace, AlternatingForm>> in;
  if (!c.input.empty()) {
    in.emplace(parse_form_document(read_json(c.input)));
  } else if (demo) {
    const Field f = Field::create(c.p, c.k);
    in.emplace(QuadraticSpace::standard(f, 1), demo_form(f));
  } else {
    throw ParseError("classify needs --input FILE or --demo");
  }
  const auto& [space, b] = *in;
  Rng rng(c.seed);
  ClassifyOptions opt;
  if (c.seeded) opt.rng = &rng;
  const ClassificationResult r = classify(space, b, opt);
  Emitter em(c.output, out);
  em.stream() << classification_to_json(space, b, r, c.explain).dump(2) << "\n";
  return 0;
}

int cmd_census(const Common& c, bool csv, bool json, bool timing, std::ostream& out) {
  const CensusReport r = nilpotent_census(Field::create(c.p, c.k), c.N, c.jobs);
  Emitter em(c.output, out);
  if (json)
    em.stream() << census_to_json(r, timing).dump(2) << "\n";
  else if (csv)
    em.stream() << census_csv(r);
  else
    em.stream() << census_table(r, timing);
  return r.all_pass() ? 0 : 1;
}

int cmd_prop2(const Common& c, bool all, std::ostream& out) {
  const Field f = Field::create(c.p, c.k);
  const QuadraticSpace space = QuadraticSpace::standard(f, c.N);
  const IsometryGroup group = enumerate_isometries(space, c.force, c.jobs);
  std::vector<QFiltration> filtrations;
  if (all) {
    filtrations = enumerate_q_filtrations(space);
  } else {
    for (const Profile& p : admissible_profiles(space.dim())) filtrations.push_back(standard_grading(space, p).filtration());
  }
  Emitter em(c.output, out);
  std::ostream& os = em.stream();
  os << "verify-prop2 N=" << c.N << " q=" << f.order() << " |SO(V)|=" << group.order() << "\n";
  std::uint64_t mismatches = 0;
  for (const auto& flt : filtrations) {
    const Prop2Report rep = verify_prop2(group, flt);
    mismatches += rep.mismatches.size();
    if (!all || !rep.mismatches.empty())
      os << "  profile " << rep.profile.to_string() << ": " << rep.forms_checked << " graded forms, " << rep.in_s2_0_count
         << " in S(V)_2^0, " << rep.mismatches.size() << " mismatches\n";
    for (const auto& m : rep.mismatches)
      os << "    mismatch form=" << form_document(space, m.form).at("form").dump()
         << " centralizer_in_stabilizer=" << m.centralizer_in_stabilizer << " in_S2_0=" << m.in_s2_0 << "\n";
  }
  if (all) os << "  " << filtrations.size() << " filtrations checked\n";
  os << mismatches << " mismatches\n";
  return mismatches == 0 ? 0 : 1;
}

int cmd_bijection(const Common& c, std::ostream& out) {
  const Field f = Field::create(c.p, c.k);
  if (!c.force && (c.N > 2 || (c.N == 2 && f.order() > 3)))
    throw SizeError("bijection check is limited to N = 1, or N = 2 with q <= 3 (use --force)");
  const BijectionReport r = verify_bijection(f, c.N);
  Emitter em(c.output, out);
  em.stream() << "verify-bijection N=" << c.N << " q=" << f.order() << "\n"
              << "  Q-filtrations: " << r.filtrations << "\n"
              << "  nilpotent forms: " << r.nilpotent_forms << "\n"
              << "  forms not in exactly one eta(V_*): " << r.not_unique << "\n"
              << "  forms whose eta(V_*) differs from classify: " << r.classify_differs << "\n"
              << (r.pass() ? "bijection verified\n" : "bijection FAILED\n");
  return r.pass() ? 0 : 1;
}

int cmd_fibers(const Common& c, std::ostream& out) {
  const Field f = Field::create(c.p, c.k);
  std::vector<FormulaCheck> checks;
  const FiberReport fr = fiber_check(f, c.N);
  for (int m = 0; m <= c.N; ++m) {
    if (f.order() <= 4) checks.push_back(sm_count(f, c.N, m));
    if (f.order() == 2) checks.push_back(springer_count(f, c.N, m));
  }
  checks.insert(checks.end(), fr.checks.begin(), fr.checks.end());
  checks.push_back(xn_identity(10, {2, 3, 4, 5, 8}));
  checks.push_back(master_identity(4, {2, 3, 4, 5, 8}));
  Emitter em(c.output, out);
  bool ok = true;
  for (const auto& ch : checks) {
    em.stream() << (ch.pass ? "PASS " : "FAIL ") << ch.name << ": " << ch.actual << " (expected " << ch.expected << ")\n";
    ok = ok && ch.pass;
  }
  return ok ? 0 : 1;
}

}  // namespace

int selftest(std::ostream& out, bool inject_fault) {
  auto make = [&](int p, int k) {
    Field f = Field::create(p, k);
    if (inject_fault && p == 2 && k == 2) f = f.with_corrupted_product(2, 2, 1);
    return f;
  };
  const Field f2 = make(2, 1), f3 = make(3, 1), f4 = make(2, 2);
  std::vector<CheckResult> checks;
  for (const Field& f : {f2, f3, f4}) checks.push_back(check_field_axioms(f));
  checks.push_back(check_nilpotent_count(f2, 1));
  checks.push_back(check_nilpotent_count(f3, 1));
  checks.push_back(check_nilpotent_count(f4, 1));
  checks.push_back(check_nilpotent_count(f2, 2));
  checks.push_back(check_bijection(f2, 1));
  checks.push_back(check_bijection(f3, 1));
  checks.push_back(check_prop2(f2, 1));
  checks.push_back(check_prop2(f4, 1));
  auto formula = [&](const FormulaCheck& fc) { checks.push_back({fc.name, fc.pass, fc.actual + " (expected " + fc.expected + ")"}); };
  auto guarded = [&](const std::string& name, const std::function<void()>& body) {
    try {
      body();
    } catch (const std::exception& e) {
      checks.push_back({name, false, std::string("error: ") + e.what()});
    }
  };
  guarded("|S_1| N=1 q=2", [&] { formula(sm_count(f2, 1, 1)); });
  guarded("|N_v*| N=1 m=0 q=2", [&] { formula(springer_count(f2, 1, 0)); });
  guarded("fibers N=1 q=2", [&] {
    for (const auto& fc : fiber_check(f2, 1).checks) formula(fc);
  });
  formula(xn_identity(5, {2, 3}));
  formula(master_identity(4, {2, 3, 4, 5, 8}));
  guarded("universality N=1", [&] {
    std::vector<CensusReport> reps;
    std::vector<BigInt> xs, ys;
    for (const Field& f : {f2, f3, f4, make(5, 1)}) {
      const CensusReport r = nilpotent_census(f, 1);
      xs.push_back(f.order());
      std::uint64_t regular = 0;
      for (const auto& [p, c] : r.tally)
        if (p.top() > 0) regular += c;
      ys.push_back(regular);
    }
    PolynomialFit fit;
    fit.coefficients = interpolate(xs, ys);
    const bool ok = fit.coefficients.size() == 4 && fit.coefficients[3] == 0 && fit.coefficients[2] == 1 &&
                    fit.coefficients[1] == 0 && fit.coefficients[0] == -1;
    checks.push_back({"universality N=1 regular piece", ok, fit.to_string()});
  });
  checks.push_back(check_oracle_equivalence(f2, 1));
  checks.push_back(check_grading_choice(f2, 1, 7, 3));
  checks.push_back(check_equivariance(f2, 1, 7, 0));
  checks.push_back(check_h_choice(f2, 1, 7, 3));

  int passed = 0;
  for (const auto& c : checks) {
    out << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << ": " << c.detail << "\n";
    if (c.pass) ++passed;
  }
  out << "selftest: " << passed << "/" << checks.size() << " checks passed\n";
  return passed == static_cast<int>(checks.size()) ? 0 : 1;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Nilpotent pieces for the dual of odd special orthogonal Lie algebras over small finite fields",
               "nilpiece"};
  app.footer(kErrorHelp);
  app.require_subcommand(1);

  Common c;
  bool demo = false, csv = false, json = false, timing = false, all = false, inject = false;

  auto* classify_cmd = app.add_subcommand("classify", "classify a nilpotent form into its piece");
  add_common(classify_cmd, c);
  classify_cmd->add_flag("--demo", demo, "use the regular dim-3 example as input");

  auto* census_cmd = app.add_subcommand("census", "enumerate nilpotent forms and tally pieces");
  add_common(census_cmd, c);
  census_cmd->add_flag("--csv", csv, "profile tally as CSV");
  census_cmd->add_flag("--json", json, "full report as JSON");
  census_cmd->add_flag("--timing", timing, "include elapsed time");

  auto* prop2_cmd = app.add_subcommand("verify-prop2", "centralizer criterion against S(V)_2^0 membership");
  add_common(prop2_cmd, c);
  prop2_cmd->add_flag("--all", all, "every Q-filtration instead of one per profile");

  auto* bij_cmd = app.add_subcommand("verify-bijection", "each nilpotent form lies in exactly one eta(V_*)");
  add_common(bij_cmd, c);

  auto* fib_cmd = app.add_subcommand("verify-fibers", "fiber sizes and counting identities");
  add_common(fib_cmd, c);

  auto* self_cmd = app.add_subcommand("selftest", "run the built-in checklist");
  self_cmd->add_flag("--inject-fault", inject)->group("");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  for (auto* sub : {classify_cmd, census_cmd, prop2_cmd, bij_cmd, fib_cmd})
    if (sub->count("--seed") > 0) c.seeded = true;

  try {
    if (*classify_cmd) return cmd_classify(c, demo, out);
    if (*census_cmd) return cmd_census(c, csv, json, timing, out);
    if (*prop2_cmd) return cmd_prop2(c, all, out);
    if (*bij_cmd) return cmd_bijection(c, out);
    if (*fib_cmd) return cmd_fibers(c, out);
    if (*self_cmd) return selftest(out, inject);
  } catch (const InternalInvariantViolation& e) {
    err << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace nilpiece
