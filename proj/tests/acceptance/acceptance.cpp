// One line per acceptance criterion; nonzero exit if any fails.
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "nilpiece/census.hpp"
#include "nilpiece/verification.hpp"

using namespace nilpiece;

namespace {

struct Criterion {
  std::string name;
  std::vector<std::string> failures;
  std::vector<std::string> notes;

  void add(const CheckResult& c) {
    (c.pass ? notes : failures).push_back(c.name + ": " + c.detail);
  }
  void add(const FormulaCheck& c) {
    (c.pass ? notes : failures).push_back(c.name + ": " + c.actual + " (expected " + c.expected + ")");
  }
  void guard(const std::string& what, const std::function<void()>& body) {
    try {
      body();
    } catch (const std::exception& e) {
      failures.push_back(what + ": " + e.what());
    }
  }
};

Field gf(int p, int k = 1) { return Field::create(p, k); }

}  // namespace

int main(int argc, char** argv) {
  const bool verbose = argc > 1 && std::string(argv[1]) == "-v";
  std::vector<Criterion> all;

  {
    Criterion c{"1 nilpotent cone has q^(2N^2) elements"};
    c.guard("counts", [&] {
      c.add(check_nilpotent_count(gf(2), 1));
      c.add(check_nilpotent_count(gf(2, 2), 1));
      c.add(check_nilpotent_count(gf(3), 1));
      c.add(check_nilpotent_count(gf(2), 2));
    });
    all.push_back(c);
  }
  {
    Criterion c{"2 every nilpotent form lies in exactly one eta(V_*)"};
    c.guard("bijection", [&] {
      c.add(check_bijection(gf(2), 1));
      c.add(check_bijection(gf(3), 1));
      c.add(check_bijection(gf(2), 2));
    });
    all.push_back(c);
  }
  {
    Criterion c{"3 centralizer criterion matches S(V)_2^0 membership"};
    c.guard("prop2", [&] {
      c.add(check_prop2(gf(2), 1));
      c.add(check_prop2(gf(3), 1));
      c.add(check_prop2(gf(2, 2), 1));
      c.add(check_prop2(gf(2), 2));
    });
    all.push_back(c);
  }
  {
    Criterion c{"4 counting identities"};
    c.guard("counts", [&] {
      for (auto [N, m] : {std::pair{1, 1}, std::pair{2, 1}, std::pair{2, 2}}) c.add(sm_count(gf(2), N, m));
      for (auto [N, m] : {std::pair{2, 0}, std::pair{2, 1}, std::pair{1, 0}}) c.add(springer_count(gf(2), N, m));
      for (int N : {2, 1})
        for (const auto& fc : fiber_check(gf(2), N).checks) c.add(fc);
      c.add(xn_identity(10, {2, 3, 5}));
      c.add(master_identity(4, {2, 3, 4, 5, 8}));
    });
    all.push_back(c);
  }
  {
    Criterion c{"5 piece counts are polynomial in q"};
    c.guard("universality", [&] {
      const auto rep = universality_check(1, {2, 3, 4, 5});
      for (const auto& fit : rep.fits) {
        const std::string line = fit.label + " = " + fit.to_string();
        (fit.integral && fit.consistent ? c.notes : c.failures).push_back(line);
      }
      if (!rep.pass()) c.failures.push_back("universality report failed");
      for (int q : {2, 3, 4, 5}) {
        const auto r = nilpotent_census(field_of_order(q), 1);
        std::uint64_t nonzero = 0;
        for (const auto& [p, n] : r.tally)
          if (p.top() > 0) nonzero += n;
        const std::string line = "q=" + std::to_string(q) + " nonzero piece " + std::to_string(nonzero);
        (nonzero == static_cast<std::uint64_t>(q * q - 1) ? c.notes : c.failures).push_back(line);
      }
    });
    all.push_back(c);
  }
  {
    Criterion c{"6 choice independence and equivariance"};
    c.guard("properties", [&] {
      c.add(check_oracle_equivalence(gf(2), 1));
      c.add(check_oracle_equivalence(gf(2, 2), 1));
      c.add(check_oracle_equivalence(gf(2), 2));
      c.add(check_grading_choice(gf(2), 1, 1, 4));
      c.add(check_grading_choice(gf(3), 1, 2, 4));
      c.add(check_grading_choice(gf(2), 2, 3, 2));
      c.add(check_equivariance(gf(2), 1, 4, 0));
      c.add(check_equivariance(gf(2), 2, 5, 300));
      c.add(check_h_choice(gf(2), 1, 6, 4));
      c.add(check_h_choice(gf(2, 2), 1, 7, 4));
      c.add(check_h_choice(gf(2), 2, 8, 2));
    });
    all.push_back(c);
  }

  int failed = 0;
  for (const auto& c : all) {
    const bool pass = c.failures.empty();
    if (!pass) ++failed;
    std::cout << (pass ? "PASS " : "FAIL ") << c.name << "\n";
    for (const auto& f : c.failures) std::cout << "    " << f << "\n";
    if (verbose)
      for (const auto& n : c.notes) std::cout << "    " << n << "\n";
  }
  return failed == 0 ? 0 : 1;
}
