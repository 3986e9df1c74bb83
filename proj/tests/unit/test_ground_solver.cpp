#include <random>

#include "doctest.h"
#include "instgnn/ground_solver.hpp"
#include "oracles.hpp"

using namespace instgnn;

namespace {

Clause unit(TermBank& bank, bool positive, TermId atom) {
  Clause c;
  c.literals.push_back({positive, atom});
  bank.intern_clause(c);
  return c;
}

}  // namespace

TEST_CASE("p(c) and not p(c) is unsatisfiable") {
  TermBank bank;
  SortId s = bank.declare_sort("S");
  SymbolId c = bank.declare_function("c", {}, s);
  SymbolId p = bank.declare_predicate("p", {s});
  TermId atom = bank.mk_apply(p, {bank.mk_constant(c)});
  std::vector<Clause> clauses{unit(bank, true, atom), unit(bank, false, atom)};
  auto r = ground_sat_check(bank, clauses);
  CHECK(r.status == GroundStatus::Unsat);
  CHECK(!r.core.empty());
}

TEST_CASE("a = b with f(a) != f(b) is unsatisfiable by congruence") {
  TermBank bank;
  SortId s = bank.declare_sort("S");
  SymbolId sa = bank.declare_function("a", {}, s);
  SymbolId sb = bank.declare_function("b", {}, s);
  SymbolId f = bank.declare_function("f", {s}, s);
  TermId a = bank.mk_constant(sa);
  TermId b = bank.mk_constant(sb);
  std::vector<Clause> clauses{
      unit(bank, true, bank.mk_equality(a, b)),
      unit(bank, false,
           bank.mk_equality(bank.mk_apply(f, {a}), bank.mk_apply(f, {b})))};
  CHECK(ground_sat_check(bank, clauses).status == GroundStatus::Unsat);
}

TEST_CASE("p(c) with not p(f(c)) has a model") {
  TermBank bank;
  SortId s = bank.declare_sort("S");
  SymbolId sc = bank.declare_function("c", {}, s);
  SymbolId f = bank.declare_function("f", {s}, s);
  SymbolId p = bank.declare_predicate("p", {s});
  TermId c = bank.mk_constant(sc);
  TermId fc = bank.mk_apply(f, {c});
  std::vector<Clause> clauses{unit(bank, true, bank.mk_apply(p, {c})),
                              unit(bank, false, bank.mk_apply(p, {fc}))};
  // Independently confirmed by assignment enumeration + fixpoint closure.
  CHECK(instgnn::testing::brute_force_euf_sat(bank, clauses));
  auto r = ground_sat_check(bank, clauses);
  REQUIRE(r.status == GroundStatus::SatCandidate);
  REQUIRE(r.model.has_value());
  CHECK(r.model->value_of(bank.mk_apply(p, {c})) == true);
  CHECK(r.model->value_of(bank.mk_apply(p, {fc})) == false);
  CHECK(!r.model->egraph.same(c, fc));
}

TEST_CASE("predicate congruence is enforced across equal arguments") {
  TermBank bank;
  SortId s = bank.declare_sort("S");
  SymbolId sa = bank.declare_function("a", {}, s);
  SymbolId sb = bank.declare_function("b", {}, s);
  SymbolId p = bank.declare_predicate("p", {s});
  TermId a = bank.mk_constant(sa);
  TermId b = bank.mk_constant(sb);
  std::vector<Clause> clauses{unit(bank, true, bank.mk_equality(a, b)),
                              unit(bank, true, bank.mk_apply(p, {a})),
                              unit(bank, false, bank.mk_apply(p, {b}))};
  CHECK(ground_sat_check(bank, clauses).status == GroundStatus::Unsat);
}

TEST_CASE("a tight decision budget reports RESOURCE_OUT") {
  TermBank bank;
  SortId s = bank.declare_sort("S");
  SymbolId p = bank.declare_predicate("p", {s});
  std::vector<Clause> clauses;
  Clause big;
  for (int i = 0; i < 6; ++i) {
    SymbolId c = bank.declare_function("c" + std::to_string(i), {}, s);
    big.literals.push_back({true, bank.mk_apply(p, {bank.mk_constant(c)})});
  }
  bank.intern_clause(big);
  clauses.push_back(big);
  CHECK(ground_sat_check(bank, clauses, /*decision_budget=*/1).status ==
        GroundStatus::ResourceOut);
}

TEST_CASE("random EUF problems agree with the truth-table oracle") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    Problem problem = instgnn::testing::random_euf_problem(rng);
    bool oracle =
        instgnn::testing::brute_force_euf_sat(problem.bank,
                                              problem.ground_clauses);
    auto r = ground_sat_check(problem.bank, problem.ground_clauses);
    REQUIRE(r.status != GroundStatus::ResourceOut);
    CAPTURE(trial);
    REQUIRE((r.status == GroundStatus::SatCandidate) == oracle);
  }
}

TEST_CASE("the model e-graph reflects the true equalities") {
  TermBank bank;
  SortId s = bank.declare_sort("S");
  SymbolId sa = bank.declare_function("a", {}, s);
  SymbolId sb = bank.declare_function("b", {}, s);
  TermId a = bank.mk_constant(sa);
  TermId b = bank.mk_constant(sb);
  std::vector<Clause> clauses{unit(bank, true, bank.mk_equality(a, b))};
  auto r = ground_sat_check(bank, clauses);
  REQUIRE(r.status == GroundStatus::SatCandidate);
  CHECK(r.model->egraph.same(a, b));
}
