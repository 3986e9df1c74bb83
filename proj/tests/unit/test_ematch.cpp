#include <functional>
#include <random>

#include "doctest.h"
#include "instgnn/ematch.hpp"
#include "instgnn/parser.hpp"
#include "oracles.hpp"

using namespace instgnn;

namespace {

// Ground facts {a = f(17), p(a)} with forall x. ~p(f(x)) | lt(x, zero).
Problem paper_ematch_problem() {
  auto r = parse_native(
      "(declare-sort S)\n"
      "(declare-fun f (S) S)\n"
      "(declare-fun a () S)\n"
      "(declare-fun n17 () S)\n"
      "(declare-fun zero () S)\n"
      "(declare-fun p (S) Bool)\n"
      "(declare-fun lt (S S) Bool)\n"
      "(assert (= a (f n17)))\n"
      "(assert (p a))\n"
      "(assert-forall ((x S)) (or (not (p (f x))) (lt x zero)))\n");
  REQUIRE(r.ok());
  return std::move(*r.problem);
}

EGraph ground_egraph(const TermBank& bank,
                     const std::vector<std::pair<TermId, TermId>>& equations) {
  EGraph eg(bank);
  for (TermId t = 0; t < bank.num_terms(); ++t) {
    const TermData& d = bank.term(t);
    if (d.ground && (d.kind == Kind::Constant ||
                     d.kind == Kind::FunctionApply ||
                     d.kind == Kind::PredicateApply)) {
      eg.add_term(t);
    }
  }
  for (const auto& [x, y] : equations) eg.merge(x, y);
  return eg;
}

TermId find_pattern(const TermBank& bank, const QuantifiedExpression& qe,
                    const char* symbol) {
  for (const Literal& lit : qe.body.literals) {
    const TermData& d = bank.term(lit.atom);
    if (d.symbol != kNoSymbol && bank.symbol(d.symbol).name == symbol) {
      return lit.atom;
    }
  }
  FAIL("pattern not found");
  return kNoTerm;
}

}  // namespace

TEST_CASE("trigger selection keeps the worked example's p(f(x))") {
  Problem problem = paper_ematch_problem();
  auto triggers = select_triggers(problem.bank, problem.qes[0]);
  REQUIRE(!triggers.empty());
  TermId pfx = find_pattern(problem.bank, problem.qes[0], "p");
  bool found = false;
  for (const Trigger& t : triggers) {
    REQUIRE(t.patterns.size() == 1);  // single-pattern covers x
    if (t.patterns[0] == pfx) found = true;
  }
  CHECK(found);
}

TEST_CASE("predicate-level patterns shadow inner function subterms") {
  auto r = parse_native(
      "(declare-sort S)\n"
      "(declare-fun q (S) Bool)\n"
      "(declare-fun f (S) S)\n"
      "(declare-fun c () S)\n"
      "(assert (q c))\n"
      "(assert-forall ((x S)) (q (f x)))\n");
  REQUIRE(r.ok());
  auto triggers = select_triggers(r.problem->bank, r.problem->qes[0]);
  REQUIRE(triggers.size() == 1);
  REQUIRE(triggers[0].patterns.size() == 1);
  CHECK(r.problem->bank.term(triggers[0].patterns[0]).kind ==
        Kind::PredicateApply);
}

TEST_CASE("variables split over literals give a multi-pattern") {
  auto r = parse_native(
      "(declare-sort S)\n"
      "(declare-fun r (S) Bool)\n"
      "(declare-fun s (S) Bool)\n"
      "(declare-fun c () S)\n"
      "(assert (r c))\n"
      "(assert-forall ((x S) (y S)) (or (r x) (s y)))\n");
  REQUIRE(r.ok());
  auto triggers = select_triggers(r.problem->bank, r.problem->qes[0]);
  REQUIRE(triggers.size() == 1);
  CHECK(triggers[0].patterns.size() == 2);
}

TEST_CASE("a QE whose variable is under no application has no trigger") {
  auto r = parse_native(
      "(declare-sort S)\n"
      "(declare-fun c () S)\n"
      "(declare-fun p (S) Bool)\n"
      "(assert (p c))\n"
      "(assert-forall ((x S)) (= x c))\n");
  REQUIRE(r.ok());
  CHECK(select_triggers(r.problem->bank, r.problem->qes[0]).empty());
}

TEST_CASE("the worked example instantiates x with 17") {
  Problem problem = paper_ematch_problem();
  TermBank& bank = problem.bank;
  TermId a = bank.mk_constant(*bank.find_symbol("a"));
  TermId n17 = bank.mk_constant(*bank.find_symbol("n17"));
  TermId f17 = bank.mk_apply(*bank.find_symbol("f"), {n17});
  EGraph eg = ground_egraph(bank, {{a, f17}});

  Trigger trigger{0, {find_pattern(bank, problem.qes[0], "p")}};
  auto matches = ematch(bank, eg, problem.qes[0], trigger);
  REQUIRE(matches.size() == 1);
  CHECK(matches[0] == std::vector<TermId>{n17});
}

TEST_CASE("an empty e-graph yields no matches") {
  Problem problem = paper_ematch_problem();
  EGraph eg(problem.bank);
  Trigger trigger{0, {find_pattern(problem.bank, problem.qes[0], "p")}};
  CHECK(ematch(problem.bank, eg, problem.qes[0], trigger).empty());
}

TEST_CASE("three distinct matches give three instantiations in one round") {
  auto r = parse_native(
      "(declare-sort S)\n"
      "(declare-fun q (S) Bool)\n"
      "(declare-fun g (S) S)\n"
      "(declare-fun c1 () S)\n"
      "(declare-fun c2 () S)\n"
      "(declare-fun c3 () S)\n"
      "(assert (q (g c1)))\n"
      "(assert (q (g c2)))\n"
      "(assert (q (g c3)))\n"
      "(assert-forall ((x S)) (not (q (g x))))\n");
  REQUIRE(r.ok());
  Problem problem = std::move(*r.problem);
  EGraph eg = ground_egraph(problem.bank, {});
  auto events = ematch_round(problem.bank, eg, problem.qes);
  CHECK(events.size() == 3);

  // Once recorded as done, the round is empty.
  for (const InstEvent& ev : events) {
    problem.qes[ev.qe_id].done_instantiations.insert(ev.tuple);
  }
  CHECK(ematch_round(problem.bank, eg, problem.qes).empty());
}

TEST_CASE("per-QE cap bounds the matches of one round") {
  auto r = parse_native(
      "(declare-sort S)\n"
      "(declare-fun q (S) Bool)\n"
      "(declare-fun c1 () S)\n"
      "(declare-fun c2 () S)\n"
      "(declare-fun c3 () S)\n"
      "(assert (q c1))\n"
      "(assert (q c2))\n"
      "(assert (q c3))\n"
      "(assert-forall ((x S)) (not (q x)))\n");
  REQUIRE(r.ok());
  Problem problem = std::move(*r.problem);
  EGraph eg = ground_egraph(problem.bank, {});
  CHECK(ematch_round(problem.bank, eg, problem.qes, 2).size() == 2);
}

TEST_CASE("matches are sound: the instantiated trigger is congruent to an "
          "existing term") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    Problem problem = instgnn::testing::random_match_problem(rng);
    TermBank& bank = problem.bank;
    std::vector<TermId> ground;
    for (TermId t = 0; t < bank.num_terms(); ++t) {
      if (bank.is_ground(t) &&
          (bank.is_value_term(t) ||
           bank.term(t).kind == Kind::PredicateApply)) {
        ground.push_back(t);
      }
    }
    std::vector<std::pair<TermId, TermId>> equations;
    std::vector<TermId> values;
    for (TermId t : ground) {
      if (bank.is_value_term(t)) values.push_back(t);
    }
    for (int i = 0; i < 2 && values.size() > 1; ++i) {
      equations.emplace_back(values[rng() % values.size()],
                             values[rng() % values.size()]);
    }
    EGraph eg = ground_egraph(bank, equations);

    for (const Trigger& trigger :
         select_triggers(bank, problem.qes[0])) {
      for (const auto& tuple : ematch(bank, eg, problem.qes[0], trigger)) {
        Substitution sub;
        for (size_t i = 0; i < tuple.size(); ++i) {
          sub.bind(problem.qes[0].variables[i], tuple[i]);
        }
        for (TermId pattern : trigger.patterns) {
          // Evaluate without creating the instantiated term.
          std::function<std::optional<TermId>(TermId)> eval =
              [&](TermId t) -> std::optional<TermId> {
            const TermData& d = bank.term(t);
            if (d.kind == Kind::BoundVariable) {
              return eg.find(*sub.lookup(t));
            }
            if (d.ground) {
              return eg.contains(t) ? std::optional<TermId>(eg.find(t))
                                    : std::nullopt;
            }
            std::vector<TermId> args;
            for (TermId c : d.children) {
              auto cls = eval(c);
              if (!cls) return std::nullopt;
              args.push_back(*cls);
            }
            auto hit = eg.eval_apply(d.symbol, args);
            return hit ? std::optional<TermId>(eg.find(*hit)) : std::nullopt;
          };
          CAPTURE(trial);
          REQUIRE(eval(pattern).has_value());
        }
      }
    }
  }
}

TEST_CASE("matcher output equals the brute-force oracle on random instances") {
  std::mt19937_64 rng(1234);
  for (int trial = 0; trial < 50; ++trial) {
    Problem problem = instgnn::testing::random_match_problem(rng);
    TermBank& bank = problem.bank;
    std::vector<TermId> ground;
    for (TermId t = 0; t < bank.num_terms(); ++t) {
      if (bank.is_ground(t) &&
          (bank.is_value_term(t) ||
           bank.term(t).kind == Kind::PredicateApply)) {
        ground.push_back(t);
      }
    }
    std::vector<TermId> values;
    for (TermId t : ground) {
      if (bank.is_value_term(t)) values.push_back(t);
    }
    std::vector<std::pair<TermId, TermId>> equations;
    int n_eq = static_cast<int>(rng() % 3);
    for (int i = 0; i < n_eq && values.size() > 1; ++i) {
      equations.emplace_back(values[rng() % values.size()],
                             values[rng() % values.size()]);
    }
    EGraph eg = ground_egraph(bank, equations);

    for (const Trigger& trigger : select_triggers(bank, problem.qes[0])) {
      auto got = ematch(bank, eg, problem.qes[0], trigger);
      auto want = instgnn::testing::brute_force_ematch(
          bank, ground, equations, problem.qes[0], trigger.patterns);
      CAPTURE(trial);
      REQUIRE(got == want);
    }
  }
}

TEST_CASE("e-matching out-instantiates enumeration when triggers are rich") {
  auto r = parse_native(
      "(declare-sort S)\n"
      "(declare-fun q (S) Bool)\n"
      "(declare-fun c1 () S)\n"
      "(declare-fun c2 () S)\n"
      "(declare-fun c3 () S)\n"
      "(declare-fun c4 () S)\n"
      "(assert (q c1))\n"
      "(assert (q c2))\n"
      "(assert (q c3))\n"
      "(assert (q c4))\n"
      "(assert-forall ((x S)) (not (q x)))\n");
  REQUIRE(r.ok());
  Problem problem = std::move(*r.problem);
  EGraph eg = ground_egraph(problem.bank, {});
  CHECK(ematch_round(problem.bank, eg, problem.qes).size() == 4);
  CHECK(enum_round(problem.bank, problem.qes).size() == 1);
}
