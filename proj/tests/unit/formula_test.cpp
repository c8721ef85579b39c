#include <algorithm>

#include "doctest.h"
#include "lea/formula.hpp"
#include "testkit.hpp"

using namespace lea;

namespace {
Formula p() { return Formula::var("p"); }
Formula q() { return Formula::var("q"); }
Formula r() { return Formula::var("r"); }
}  // namespace

TEST_CASE("parse builds the expected trees") {
  CHECK(parse("o T") == Formula::ess(Formula::top()));
  CHECK(parse("~p -> o p") == Formula::implies(Formula::neg(p()), Formula::ess(p())));
  CHECK(parse("p & q | r") == Formula::disj(Formula::conj(p(), q()), r()));
  CHECK(parse("p | q & r") == Formula::disj(p(), Formula::conj(q(), r())));
  CHECK(parse("p -> q -> r") == Formula::implies(p(), Formula::implies(q(), r())));
  CHECK(parse("p <-> q <-> r") == Formula::iff(p(), Formula::iff(q(), r())));
  CHECK(parse("p & q & r") == Formula::conj(Formula::conj(p(), q()), r()));
  CHECK(parse("~p & q") == Formula::conj(Formula::neg(p()), q()));
  CHECK(parse("o p & q") == Formula::conj(Formula::ess(p()), q()));
  CHECK(parse("[]<>p") == Formula::box(Formula::neg(Formula::box(Formula::neg(p())))));
  CHECK(parse("A p") == Formula::neg(Formula::ess(p())));
  CHECK(parse("F") == Formula::bot());
  CHECK(parse("  ( p1 )  ") == Formula::var("p1"));
}

TEST_CASE("identifiers and the reserved o") {
  // Identifiers never start with o, so o binds to what follows.
  CHECK(parse("op") == Formula::ess(p()));
  CHECK(parse("oo p") == Formula::ess(Formula::ess(p())));
  CHECK_THROWS_AS(parse("oo"), ParseError);
  CHECK(parse("po") == Formula::var("po"));
  CHECK(parse("o o p") == Formula::ess(Formula::ess(p())));
  CHECK(is_identifier("p"));
  CHECK(is_identifier("x12"));
  CHECK_FALSE(is_identifier("o"));
  CHECK_FALSE(is_identifier("op"));
  CHECK_FALSE(is_identifier("P"));
  CHECK_FALSE(is_identifier("1p"));
  CHECK_FALSE(is_identifier(""));
  CHECK_THROWS_AS(parse("o"), ParseError);
}

TEST_CASE("syntax errors carry offset and expected tokens") {
  try {
    parse("p &");
    FAIL("expected a syntax error");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 3);
    const auto& ex = e.expected();
    CHECK(std::find(ex.begin(), ex.end(), "identifier") != ex.end());
    CHECK(std::find(ex.begin(), ex.end(), "(") != ex.end());
  }
  try {
    parse("(p | q");
    FAIL("expected a syntax error");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 6);
    CHECK(std::find(e.expected().begin(), e.expected().end(), ")") != e.expected().end());
  }
  CHECK_THROWS_AS(parse(""), ParseError);
  CHECK_THROWS_AS(parse("p q"), ParseError);
  CHECK_THROWS_AS(parse("p $ q"), ParseError);
  CHECK_THROWS_AS(parse("[p"), ParseError);
}

TEST_CASE("render examples") {
  CHECK(render(Formula::ess(p())) == "o p");
  CHECK(render(Formula::implies(Formula::conj(Formula::ess(p()), p()), Formula::ess(Formula::ess(p())))) ==
        "(o p & p) -> o o p");
  CHECK(render(parse("A p")) == "A p");
  CHECK(render(parse("<>p")) == "<>p");
  CHECK(render(parse("~o p")) == "~o p");
  CHECK(render(parse("(p | q) & r")) == "(p | q) & r");
  CHECK(render(parse("p & (q & r)")) == "p & (q & r)");
}

TEST_CASE("parse(render(f)) == f on random formulas") {
  testkit::Rng rng(11);
  testkit::FormulaShape shape{{"p", "q", "r1"}, 6, 6, true, true};
  for (int i = 0; i < 1000; ++i) {
    Formula f = testkit::random_formula(rng, shape);
    std::string text = render(f);
    Formula back = parse(text);
    REQUIRE_MESSAGE(back == f, text);
    CHECK(render(back) == text);
  }
}

TEST_CASE("sugar does not affect equality") {
  CHECK(Formula::acc(p()) == Formula::neg(Formula::ess(p())));
  CHECK(Formula::dia(p()) == Formula::neg(Formula::box(Formula::neg(p()))));
  CHECK(Formula::acc(p()).hash() == Formula::neg(Formula::ess(p())).hash());
  CHECK(Formula::acc(p()).sugar() == Sugar::Acc);
}

TEST_CASE("fragments and measurements") {
  Formula f = parse("o (p & [] q)");
  CHECK_FALSE(f.is_lea());
  CHECK_FALSE(f.is_ml());
  CHECK(parse("o o p").is_lea());
  CHECK(parse("[] p").is_ml());
  CHECK(parse("p & q").is_lea());
  CHECK(parse("p & q").is_ml());
  CHECK(parse("o (p & o q) | [] r").modal_depth() == 2);
  CHECK(parse("p -> q").size() == 3);
  CHECK(parse("o (p & q) | r").vars() == std::set<std::string>{"p", "q", "r"});
}

TEST_CASE("substitute") {
  Formula equikw = parse("~p -> o p");
  CHECK(substitute(equikw, {{"p", parse("q & r")}}) == parse("~(q & r) -> o (q & r)"));
  CHECK(substitute(equikw, {}) == equikw);
  CHECK(substitute(parse("p -> o(o ~p -> p)"), {{"p", parse("~~q")}}) == parse("~~q -> o(o ~~~q -> ~~q)"));
  // Simultaneous: p and q swap instead of collapsing.
  CHECK(substitute(parse("p & o q"), {{"p", q()}, {"q", p()}}) == parse("q & o p"));
  CHECK(substitute(parse("A p"), {{"p", q()}}).sugar() == Sugar::Acc);
}

TEST_CASE("substitute distributes over every connective") {
  testkit::Rng rng(5);
  testkit::FormulaShape shape{{"p", "q"}, 5, 3, true, true};
  Substitution s{{"p", parse("q | o r")}, {"q", parse("[] p")}};
  for (int i = 0; i < 300; ++i) {
    Formula f = testkit::random_formula(rng, shape);
    Formula g = substitute(f, s);
    switch (f.op()) {
      case Op::Var:
        CHECK(g == s.at(f.name()));
        break;
      case Op::Top:
      case Op::Bot:
        CHECK(g == f);
        break;
      case Op::Not:
      case Op::Ess:
      case Op::Box:
        REQUIRE(g.op() == f.op());
        CHECK(g.arg() == substitute(f.arg(), s));
        break;
      default:
        REQUIRE(g.op() == f.op());
        CHECK(g.lhs() == substitute(f.lhs(), s));
        CHECK(g.rhs() == substitute(f.rhs(), s));
    }
  }
}

TEST_CASE("to_ml") {
  CHECK(to_ml(parse("o p")) == parse("p -> []p"));
  CHECK(to_ml(p()) == p());
  CHECK(to_ml(parse("o o p")) == parse("(p -> []p) -> [](p -> []p)"));
  CHECK(to_ml(parse("A p")) == parse("~(p -> []p)"));
  CHECK(to_ml(parse("o p")).is_ml());
  CHECK_THROWS_AS(to_ml(parse("[] p")), FragmentError);
}

TEST_CASE("to_lea") {
  CHECK(to_lea(parse("[] p")) == parse("o p & p"));
  CHECK(to_lea(q()) == q());
  CHECK(to_lea(parse("[][]p")) == parse("o (o p & p) & (o p & p)"));
  CHECK(to_lea(parse("[] p")).is_lea());
  CHECK_THROWS_AS(to_lea(parse("o p")), FragmentError);
}
