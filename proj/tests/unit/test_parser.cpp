#include "doctest.h"
#include "instgnn/parser.hpp"

using namespace instgnn;

TEST_CASE("native: one ground clause and one QE") {
  auto r = parse_native(
      "(declare-sort S)\n"
      "(declare-fun p (S) Bool)\n"
      "(declare-fun c () S)\n"
      "(assert (p c))\n"
      "(assert-forall ((x S)) (or (not (p x))))\n");
  REQUIRE(r.ok());
  CHECK(r.problem->ground_clauses.size() == 1);
  CHECK(r.problem->qes.size() == 1);
  CHECK(r.problem->qes[0].variables.size() == 1);
}

TEST_CASE("native: the ground part {p(c)} with forall x. q(f(x))") {
  auto r = parse_native(
      "(declare-sort S)\n"
      "(declare-fun p (S) Bool)\n"
      "(declare-fun q (S) Bool)\n"
      "(declare-fun f (S) S)\n"
      "(declare-fun c () S)\n"
      "(assert (p c))\n"
      "(assert-forall ((x S)) (q (f x)))\n");
  REQUIRE(r.ok());
  const Problem& p = *r.problem;
  CHECK(p.ground_clauses.size() == 1);
  REQUIRE(p.qes.size() == 1);
  CHECK(p.qes[0].variables.size() == 1);
  CHECK(p.qes[0].body.literals.size() == 1);
  // The only ground value term so far is c.
  auto ground = p.bank.ground_terms_of_sort(*p.bank.find_sort("S"));
  CHECK(ground.size() == 1);
}

TEST_CASE("native: malformed input yields a diagnostic, not a crash") {
  auto r = parse_native("(assert");
  CHECK(!r.ok());
  REQUIRE(!r.diagnostics.empty());
  CHECK(r.diagnostics[0].line == 1);
}

TEST_CASE("native: unknown symbols and arity mistakes are diagnosed") {
  auto r = parse_native("(assert (p c))");
  CHECK(!r.ok());
  auto r2 = parse_native(
      "(declare-sort S)(declare-fun f (S) S)(declare-fun c () S)"
      "(declare-fun p (S) Bool)(assert (p (f c c)))");
  CHECK(!r2.ok());
  auto r3 = parse_native("(declare-sort S)(declare-sort S)");
  CHECK(!r3.ok());
  auto r4 = parse_native(
      "(declare-sort S)(declare-fun p (S) Bool)(assert-forall ((x S)) (or))");
  CHECK(!r4.ok());
}

TEST_CASE("native: equality atoms parse and enforce sorts") {
  auto r = parse_native(
      "(declare-sort S)\n"
      "(declare-fun a () S)\n"
      "(declare-fun f (S) S)\n"
      "(declare-fun n17 () S)\n"
      "(assert (= a (f n17)))\n");
  REQUIRE(r.ok());
  CHECK(r.problem->ground_clauses.size() == 1);
}

TEST_CASE("native round-trip: print then reparse is structurally identical") {
  std::string text =
      "(declare-sort S)\n"
      "(declare-sort T)\n"
      "(declare-fun f (S) S)\n"
      "(declare-fun h (S T) S)\n"
      "(declare-fun p (S) Bool)\n"
      "(declare-fun r (S T) Bool)\n"
      "(declare-fun c () S)\n"
      "(declare-fun d () T)\n"
      "(assert (p c))\n"
      "(assert (or (not (p (f c))) (r c d)))\n"
      "(assert (= (h c d) c))\n"
      "(assert-forall ((x S) (y T)) (or (not (r x y)) (p (f x))))\n"
      "(assert-forall ((x S)) (not (= (f x) c)))\n";
  auto first = parse_native(text);
  REQUIRE(first.ok());
  std::string printed = print_native(*first.problem);
  auto second = parse_native(printed);
  REQUIRE(second.ok());
  CHECK(print_native(*second.problem) == printed);
}

TEST_CASE("tptp: ground clause") {
  auto r = parse_tptp_cnf("cnf(a, axiom, p(c)).");
  REQUIRE(r.ok());
  CHECK(r.problem->ground_clauses.size() == 1);
  CHECK(r.problem->qes.empty());
}

TEST_CASE("tptp: clause with a variable becomes a QE") {
  auto r = parse_tptp_cnf("cnf(b, axiom, ~p(X) | q(X)).");
  REQUIRE(r.ok());
  CHECK(r.problem->ground_clauses.empty());
  REQUIRE(r.problem->qes.size() == 1);
  CHECK(r.problem->qes[0].variables.size() == 1);
  CHECK(r.problem->qes[0].body.literals.size() == 2);
}

TEST_CASE("tptp: every variable binds to exactly one QE per clause") {
  auto r = parse_tptp_cnf(
      "cnf(c1, axiom, ~edge(X,Y) | edge(Y,X)).\n"
      "cnf(c2, axiom, ~edge(X,Y) | node(X)).\n");
  REQUIRE(r.ok());
  REQUIRE(r.problem->qes.size() == 2);
  CHECK(r.problem->qes[0].variables.size() == 2);
  CHECK(r.problem->qes[1].variables.size() == 2);
  // Binder identities differ between the two QEs.
  CHECK(r.problem->qes[0].variables[0] != r.problem->qes[1].variables[0]);
}

TEST_CASE("tptp: fof input is an unsupported construct") {
  auto r = parse_tptp_cnf("fof(c, axiom, ![X]: p(X)).");
  CHECK(!r.ok());
  REQUIRE(!r.diagnostics.empty());
  CHECK(r.diagnostics[0].message.find("unsupported") != std::string::npos);
}

TEST_CASE("tptp: equality and negated equality") {
  auto r = parse_tptp_cnf("cnf(a, axiom, f(X) != g(X) | a = b).");
  REQUIRE(r.ok());
  REQUIRE(r.problem->qes.size() == 1);
  const auto& lits = r.problem->qes[0].body.literals;
  REQUIRE(lits.size() == 2);
  CHECK(lits[0].positive == false);
  CHECK(lits[1].positive == true);
}

TEST_CASE("tptp: symbol used with inconsistent arity is diagnosed") {
  auto r = parse_tptp_cnf("cnf(a, axiom, p(c)). cnf(b, axiom, p(c, c)).");
  CHECK(!r.ok());
}

TEST_CASE("tptp: comments and quoted names are tolerated") {
  auto r = parse_tptp_cnf(
      "% a comment\n"
      "/* block */ cnf('my-name', negated_conjecture, ~p(a)).\n");
  REQUIRE(r.ok());
  CHECK(r.problem->ground_clauses.size() == 1);
}
