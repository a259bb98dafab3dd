#include "doctest.h"

#include <random>

#include "syntax.hpp"

using namespace bdl;

namespace {

Signature demo_signature() {
  return Signature({"a", "b", "nil"}, {{"f", 1}}, {{"P", 1}, {"Q", 2}}, {"p"});
}

Term var(const std::string& n) { return Term::variable(n); }
Term con(const std::string& n) { return Term::constant(n); }

}  // namespace

TEST_CASE("precedence: negation binds tighter than conjunction") {
  Signature sig = demo_signature();
  Formula f = parse_formula("~P(a) & Q(b, b)", sig);
  Formula expected = Formula::conjunction(
      Formula::negation(Formula::atom("P", {con("a")})),
      Formula::atom("Q", {con("b"), con("b")}));
  CHECK(f == expected);
}

TEST_CASE("quantifier scope extends maximally to the right") {
  Signature sig = demo_signature();
  Formula f = parse_formula("forall x. P(x) -> false", sig);
  Formula expected = Formula::for_all(
      "x", Formula::implication(Formula::atom("P", {var("x")}),
                                Formula::falsum()));
  CHECK(f == expected);

  Formula g = parse_formula("p & forall x. P(x) | p", sig);
  Formula expected_g = Formula::conjunction(
      Formula::proposition("p"),
      Formula::for_all("x", Formula::disjunction(
                                Formula::atom("P", {var("x")}),
                                Formula::proposition("p"))));
  CHECK(g == expected_g);
}

TEST_CASE("cons expands through des") {
  Signature sig = demo_signature();
  Formula pa = Formula::atom("P", {con("a")});
  Formula expected = Formula::negation(Formula::negation(Formula::implication(
      Formula::conjunction(pa, Formula::negation(pa)), Formula::falsum())));
  CHECK(parse_formula("cons(P(a))", sig) == expected);
}

TEST_CASE("abbreviation expansions") {
  CHECK(expand(Abbreviation::truth()) == Formula::negation(Formula::falsum()));

  Formula nil_defined = expand(Abbreviation::defined(con("nil")));
  Formula expected_def = Formula::negation(Formula::implication(
      Formula::equality(con("nil"), con("nil")), Formula::falsum()));
  CHECK(nil_defined == expected_def);

  Formula seq = expand(Abbreviation::strong_equal(con("a"), con("b")));
  Formula expected_seq = Formula::disjunction(
      Formula::equality(con("a"), con("b")),
      Formula::negation(Formula::disjunction(
          expand(Abbreviation::defined(con("a"))),
          expand(Abbreviation::defined(con("b"))))));
  CHECK(seq == expected_seq);

  Signature sig = demo_signature();
  CHECK(parse_formula("a == b", sig) == expected_seq);
  CHECK(parse_formula("a != b", sig) ==
        Formula::negation(Formula::equality(con("a"), con("b"))));
  Formula simp = parse_formula("p => p", sig);
  Formula p = Formula::proposition("p");
  CHECK(simp == Formula::conjunction(
                    Formula::implication(p, p),
                    Formula::implication(Formula::negation(p),
                                         Formula::negation(p))));
}

TEST_CASE("free variables") {
  Formula f = Formula::for_all("x", Formula::equality(var("x"), var("y")));
  CHECK(free_vars(f) == std::set<std::string>{"y"});
  CHECK(free_vars(Formula::atom("P", {var("z")})) ==
        std::set<std::string>{"z"});
  CHECK(free_vars(Formula::falsum()).empty());
}

TEST_CASE("substitution") {
  Formula eq = Formula::equality(var("x"), var("x"));
  CHECK(substitute("x", con("a"), eq) ==
        Formula::equality(con("a"), con("a")));

  // Capture avoidance: the bound y is renamed before y is substituted in.
  Formula f = Formula::for_all("y", Formula::equality(var("x"), var("y")));
  Formula got = substitute("x", var("y"), f);
  Formula expected =
      Formula::for_all("y1", Formula::equality(var("y"), var("y1")));
  CHECK(got == expected);

  Formula closed = Formula::for_all("x", Formula::atom("P", {var("x")}));
  CHECK(substitute("x", con("a"), closed) == closed);
}

TEST_CASE("substitution laws") {
  Formula body = Formula::exists(
      "z", Formula::conjunction(Formula::atom("P", {var("x")}),
                                Formula::equality(var("z"), var("w"))));
  CHECK(alpha_equal(substitute("x", var("x"), body), body));

  Term t = Term::application("f", {var("u")});
  Formula after = substitute("x", t, body);
  std::set<std::string> expected = free_vars(body);
  expected.erase("x");
  for (const auto& v : free_vars(t)) expected.insert(v);
  CHECK(free_vars(after) == expected);
}

TEST_CASE("alpha equality") {
  Formula f1 = Formula::for_all("x", Formula::atom("P", {var("x")}));
  Formula f2 = Formula::for_all("y", Formula::atom("P", {var("y")}));
  CHECK(alpha_equal(f1, f2));
  CHECK(!alpha_equal(f1, Formula::for_all("x", Formula::atom("P", {var("z")}))));
}

TEST_CASE("parse errors carry positions and reasons") {
  Signature sig = demo_signature();
  CHECK_THROWS_AS(parse_formula("P(a", sig), ParseError);
  CHECK_THROWS_AS(parse_formula("R(a)", sig), ParseError);   // R undeclared: term then missing '='
  CHECK_THROWS_AS(parse_formula("P(a, b)", sig), ParseError);  // arity
  CHECK_THROWS_AS(parse_formula("", sig), ParseError);
  CHECK_THROWS_AS(parse_formula("forall P. p", sig), ParseError);
}

TEST_CASE("signature validation") {
  CHECK_THROWS_AS(Signature({"forall"}, {}, {}, {}), ValidationError);
  CHECK_THROWS_AS(Signature({"a", "a"}, {}, {}, {}), ValidationError);
  CHECK_THROWS_AS(Signature({"a"}, {{"g", 0}}, {}, {}), ValidationError);
  CHECK_THROWS_AS(Signature({"a"}, {}, {{"a", 1}}, {}), ValidationError);
}

namespace {

// Random core formulas for the round-trip property.
struct FormulaGen {
  std::mt19937 rng;
  Signature sig = demo_signature();

  explicit FormulaGen(unsigned seed) : rng(seed) {}

  int pick(int n) { return static_cast<int>(rng() % n); }

  Term gen_term(int depth) {
    switch (pick(depth > 0 ? 4 : 3)) {
      case 0:
        return var(pick(2) ? "x" : "y");
      case 1:
        return con("a");
      case 2:
        return con("b");
      default:
        return Term::application("f", {gen_term(depth - 1)});
    }
  }

  Formula gen(int depth) {
    if (depth == 0) {
      switch (pick(4)) {
        case 0:
          return Formula::proposition("p");
        case 1:
          return Formula::atom("P", {gen_term(1)});
        case 2:
          return Formula::equality(gen_term(1), gen_term(1));
        default:
          return Formula::falsum();
      }
    }
    switch (pick(7)) {
      case 0:
        return Formula::negation(gen(depth - 1));
      case 1:
        return Formula::conjunction(gen(depth - 1), gen(depth - 1));
      case 2:
        return Formula::disjunction(gen(depth - 1), gen(depth - 1));
      case 3:
        return Formula::implication(gen(depth - 1), gen(depth - 1));
      case 4:
        return Formula::for_all(pick(2) ? "x" : "y", gen(depth - 1));
      case 5:
        return Formula::exists(pick(2) ? "x" : "y", gen(depth - 1));
      default:
        return gen(0);
    }
  }
};

}  // namespace

TEST_CASE("parse/print round trip") {
  FormulaGen gen(20240811);
  for (int i = 0; i < 400; ++i) {
    Formula f = gen.gen(1 + gen.pick(3));
    std::string text = print_formula(f);
    CAPTURE(text);
    Formula back = parse_formula(text, gen.sig);
    CHECK(back == f);
  }
}
