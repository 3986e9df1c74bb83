#include <random>

#include "doctest.h"
#include "instgnn/egraph.hpp"
#include "oracles.hpp"

using namespace instgnn;
using instgnn::testing::NaiveClosure;

namespace {

struct EufSig {
  TermBank bank;
  SortId s;
  TermId a, b, c, n17, fa, fb, f17;
  SymbolId f, p;

  EufSig() {
    s = bank.declare_sort("S");
    SymbolId sa = bank.declare_function("a", {}, s);
    SymbolId sb = bank.declare_function("b", {}, s);
    SymbolId sc = bank.declare_function("c", {}, s);
    SymbolId s17 = bank.declare_function("n17", {}, s);
    f = bank.declare_function("f", {s}, s);
    p = bank.declare_predicate("p", {s});
    a = bank.mk_constant(sa);
    b = bank.mk_constant(sb);
    c = bank.mk_constant(sc);
    n17 = bank.mk_constant(s17);
    fa = bank.mk_apply(f, {a});
    fb = bank.mk_apply(f, {b});
    f17 = bank.mk_apply(f, {n17});
  }
};

}  // namespace

TEST_CASE("asserting a = f(17) merges the classes") {
  EufSig t;
  EGraph eg(t.bank);
  eg.add_term(t.a);
  eg.add_term(t.f17);
  CHECK(!eg.same(t.a, t.f17));
  eg.merge(t.a, t.f17);
  CHECK(eg.find(t.a) == eg.find(t.f17));
}

TEST_CASE("congruence: a = b forces f(a) = f(b)") {
  EufSig t;
  EGraph eg(t.bank);
  eg.add_term(t.fa);
  eg.add_term(t.fb);
  eg.merge(t.a, t.b);
  CHECK(eg.same(t.fa, t.fb));
}

TEST_CASE("registering an application congruent to an existing one merges") {
  EufSig t;
  EGraph eg(t.bank);
  eg.add_term(t.fa);
  eg.add_term(t.b);
  eg.merge(t.a, t.b);
  eg.add_term(t.fb);  // f(b) enters a world where a ~ b already
  CHECK(eg.same(t.fa, t.fb));
}

TEST_CASE("asserting t = t is a no-op on the class count") {
  EufSig t;
  EGraph eg(t.bank);
  eg.add_term(t.fa);
  eg.add_term(t.b);
  size_t before = eg.class_count();
  eg.merge(t.fa, t.fa);
  CHECK(eg.class_count() == before);
}

TEST_CASE("congruence chains propagate through nested applications") {
  EufSig t;
  TermId ffa = t.bank.mk_apply(t.f, {t.fa});
  TermId ffb = t.bank.mk_apply(t.f, {t.fb});
  EGraph eg(t.bank);
  eg.add_term(ffa);
  eg.add_term(ffb);
  eg.merge(t.a, t.b);
  CHECK(eg.same(t.fa, t.fb));
  CHECK(eg.same(ffa, ffb));
}

TEST_CASE("eval_apply finds congruent applications without creating terms") {
  EufSig t;
  EGraph eg(t.bank);
  eg.add_term(t.fa);
  eg.add_term(t.b);
  eg.merge(t.a, t.b);
  auto cls = eg.eval_apply(t.f, {t.b});
  REQUIRE(cls.has_value());
  CHECK(eg.same(*cls, t.fa));
  CHECK(!eg.eval_apply(t.f, {t.fa}).has_value());
}

TEST_CASE("random banks agree with the naive fixpoint closure") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 60; ++trial) {
    TermBank bank;
    SortId s = bank.declare_sort("S");
    int n_consts = 2 + static_cast<int>(rng() % 4);
    std::vector<TermId> terms;
    for (int i = 0; i < n_consts; ++i) {
      terms.push_back(bank.mk_constant(
          bank.declare_function("k" + std::to_string(i), {}, s)));
    }
    SymbolId f = bank.declare_function("f", {s}, s);
    SymbolId h = bank.declare_function("h", {s, s}, s);
    while (terms.size() < 30 && rng() % 5 != 0) {
      TermId x = terms[rng() % terms.size()];
      TermId y = terms[rng() % terms.size()];
      terms.push_back(rng() % 2 == 0 ? bank.mk_apply(f, {x})
                                     : bank.mk_apply(h, {x, y}));
    }
    std::vector<std::pair<TermId, TermId>> equations;
    int n_eq = static_cast<int>(rng() % 11);
    for (int i = 0; i < n_eq; ++i) {
      equations.emplace_back(terms[rng() % terms.size()],
                             terms[rng() % terms.size()]);
    }

    EGraph eg(bank);
    for (TermId t : terms) eg.add_term(t);
    for (const auto& [x, y] : equations) eg.merge(x, y);
    NaiveClosure oracle(bank, terms, equations);

    for (size_t i = 0; i < terms.size(); ++i) {
      for (size_t j = i + 1; j < terms.size(); ++j) {
        CAPTURE(trial);
        REQUIRE(eg.same(terms[i], terms[j]) ==
                oracle.same(terms[i], terms[j]));
      }
    }
  }
}
