#include "nilpiece/verification.hpp"

#include <sstream>

#include "nilpiece/census.hpp"
#include "nilpiece/classifier.hpp"
#include "nilpiece/errors.hpp"
#include "nilpiece/group_oracle.hpp"
#include "nilpiece/nilcone.hpp"

namespace nilpiece {
namespace {

std::string tag(const Field& f, int N) {
  return "N=" + std::to_string(N) + " q=" + std::to_string(f.order());
}

std::vector<AlternatingForm> nilpotent_forms(const QuadraticSpace& space) {
  std::vector<AlternatingForm> out;
  const std::uint64_t count = alternating_form_count(space.field(), space.dim());
  for (std::uint64_t i = 0; i < count; ++i) {
    AlternatingForm b = alternating_form_at(space.field(), space.dim(), i);
    if (is_nilpotent(space, b)) out.push_back(std::move(b));
  }
  return out;
}

template <class Body>
CheckResult guarded(std::string name, Body&& body) {
  CheckResult r{std::move(name), false, ""};
  try {
    body(r);
  } catch (const std::exception& e) {
    r.pass = false;
    r.detail = std::string("error: ") + e.what();
  }
  return r;
}

}  // namespace

CheckResult check_field_axioms(const Field& f) {
  return guarded("field axioms GF(" + std::to_string(f.order()) + ")", [&](CheckResult& r) {
    const int q = f.order();
    std::uint64_t bad = 0;
    for (int a = 0; a < q; ++a) {
      const Elem x = static_cast<Elem>(a);
      if (f.add(x, f.neg(x)) != 0 || f.mul(x, 1) != x) ++bad;
      if (x != 0 && f.mul(x, f.inv(x)) != 1) ++bad;
      for (int b = 0; b < q; ++b) {
        const Elem y = static_cast<Elem>(b);
        if (f.mul(x, y) != f.mul(y, x) || f.add(x, y) != f.add(y, x)) ++bad;
        for (int c = 0; c < q; ++c) {
          const Elem z = static_cast<Elem>(c);
          if (f.mul(x, f.add(y, z)) != f.add(f.mul(x, y), f.mul(x, z))) ++bad;
          if (f.mul(x, f.mul(y, z)) != f.mul(f.mul(x, y), z)) ++bad;
        }
      }
    }
    r.pass = bad == 0;
    r.detail = std::to_string(bad) + " violations";
  });
}

CheckResult check_nilpotent_count(const Field& field, int N, int jobs) {
  return guarded("nilpotent count " + tag(field, N), [&](CheckResult& r) {
    const CensusReport rep = nilpotent_census(field, N, jobs);
    BigInt expected = 1;
    for (int i = 0; i < 2 * N * N; ++i) expected *= field.order();
    r.pass = BigInt(rep.total) == expected && rep.all_pass();
    r.detail = std::to_string(rep.total) + " = q^(2N^2) = " + expected.str();
    if (!r.pass) r.detail = std::to_string(rep.total) + " (q^(2N^2) = " + expected.str() + ")";
  });
}

BijectionReport verify_bijection(const Field& field, int N) {
  if (N > 2) throw SizeError("bijection check is limited to N <= 2");
  const QuadraticSpace space = QuadraticSpace::standard(field, N);
  const auto filtrations = enumerate_q_filtrations(space);
  BijectionReport rep;
  rep.filtrations = filtrations.size();
  for (const auto& b : nilpotent_forms(space)) {
    ++rep.nilpotent_forms;
    const ClassificationResult c = classify(space, b);
    int hits = 0;
    bool self = false;
    for (const auto& f : filtrations) {
      if (!in_eta(space, f, b)) continue;
      ++hits;
      if (f == c.filtration) self = true;
    }
    if (hits != 1) ++rep.not_unique;
    else if (!self) ++rep.classify_differs;
  }
  return rep;
}

CheckResult check_bijection(const Field& field, int N) {
  return guarded("bijection " + tag(field, N), [&](CheckResult& r) {
    const BijectionReport rep = verify_bijection(field, N);
    r.pass = rep.pass();
    std::ostringstream os;
    os << rep.nilpotent_forms << " forms x " << rep.filtrations << " filtrations, " << rep.not_unique
       << " not unique, " << rep.classify_differs << " differ from classify";
    r.detail = os.str();
  });
}

CheckResult check_prop2(const Field& field, int N, int jobs, bool force) {
  return guarded("centralizer criterion " + tag(field, N), [&](CheckResult& r) {
    const QuadraticSpace space = QuadraticSpace::standard(field, N);
    const IsometryGroup group = enumerate_isometries(space, force, jobs);
    std::uint64_t forms = 0, mismatches = 0;
    int profiles = 0;
    for (const Profile& p : admissible_profiles(space.dim())) {
      const Prop2Report rep = verify_prop2(group, standard_grading(space, p).filtration());
      forms += rep.forms_checked;
      mismatches += rep.mismatches.size();
      ++profiles;
    }
    r.pass = mismatches == 0;
    r.detail = std::to_string(profiles) + " profiles, " + std::to_string(forms) + " graded forms, " +
               std::to_string(mismatches) + " mismatches";
  });
}

CheckResult check_oracle_equivalence(const Field& field, int N) {
  return guarded("nilpotent <=> good basis " + tag(field, N), [&](CheckResult& r) {
    const QuadraticSpace space = QuadraticSpace::standard(field, N);
    const IsometryGroup group = enumerate_isometries(space);
    const std::uint64_t count = alternating_form_count(field, space.dim());
    std::uint64_t bad = 0;
    for (std::uint64_t i = 0; i < count; ++i) {
      const AlternatingForm b = alternating_form_at(field, space.dim(), i);
      if (is_nilpotent(space, b) != good_basis_oracle(group, b)) ++bad;
    }
    r.pass = bad == 0;
    r.detail = std::to_string(count) + " forms, " + std::to_string(bad) + " counterexamples";
  });
}

CheckResult check_grading_choice(const Field& field, int N, std::uint64_t seed, int trials) {
  return guarded("grading-choice independence " + tag(field, N), [&](CheckResult& r) {
    const QuadraticSpace space = QuadraticSpace::standard(field, N);
    const auto filtrations = enumerate_q_filtrations(space);
    Rng rng(seed);
    std::uint64_t pairs = 0, bad = 0;
    for (const auto& b : nilpotent_forms(space))
      for (const auto& f : filtrations) {
        const bool base = in_eta(space, f, b);
        ++pairs;
        for (int t = 0; t < trials; ++t)
          if (in_eta(space, f, b, &rng) != base) {
            ++bad;
            break;
          }
      }
    r.pass = bad == 0;
    r.detail = std::to_string(pairs) + " (form, filtration) pairs, " + std::to_string(bad) + " counterexamples";
  });
}

CheckResult check_equivariance(const Field& field, int N, std::uint64_t seed, std::size_t sample) {
  return guarded("classify equivariance " + tag(field, N), [&](CheckResult& r) {
    const QuadraticSpace space = QuadraticSpace::standard(field, N);
    const IsometryGroup group = enumerate_isometries(space);
    const auto forms = nilpotent_forms(space);
    std::uint64_t runs = 0, bad = 0;
    auto one = [&](const Matrix& g, const AlternatingForm& b) {
      const ClassificationResult c = classify(space, b);
      const ClassificationResult cg = classify(space, transport_form(g, b));
      ++runs;
      if (!(cg.filtration == c.filtration.transported(g)) || !(cg.profile == c.profile)) ++bad;
    };
    if (sample == 0) {
      for (const auto& g : group.elements())
        for (const auto& b : forms) one(g, b);
    } else {
      Rng rng(seed);
      std::uniform_int_distribution<std::size_t> pick_g(0, group.order() - 1), pick_b(0, forms.size() - 1);
      for (std::size_t s = 0; s < sample; ++s) {
        const std::size_t gi = pick_g(rng);
        one(group.elements()[gi], forms[pick_b(rng)]);
      }
    }
    r.pass = bad == 0;
    r.detail = std::to_string(runs) + " pairs, " + std::to_string(bad) + " counterexamples";
  });
}

CheckResult check_h_choice(const Field& field, int N, std::uint64_t seed, int trials) {
  return guarded("H choice independence " + tag(field, N), [&](CheckResult& r) {
    if (field.characteristic() != 2) throw CharacteristicError("H is defined in characteristic 2");
    const QuadraticSpace space = QuadraticSpace::standard(field, N);
    Rng rng(seed);
    std::uint64_t runs = 0, bad = 0;
    for (const auto& b : nilpotent_forms(space)) {
      if (b.is_zero()) continue;
      const ClassificationResult c = classify(space, b);
      const auto chain = extract_chain(space, b);
      const HData h = compute_H(space, *chain, b);
      for (int t = 0; t < trials; ++t) {
        ++runs;
        ClassifyOptions opt{&rng};
        const auto chain_r = extract_chain(space, b, ChainOptions{&rng});
        const HData hr = compute_H(space, *chain_r, b);
        if (!(hr.H == h.H) || hr.n != h.n || !(classify(space, b, opt).filtration == c.filtration)) ++bad;
      }
    }
    r.pass = bad == 0;
    r.detail = std::to_string(runs) + " randomized runs, " + std::to_string(bad) + " counterexamples";
  });
}

}  // namespace nilpiece
