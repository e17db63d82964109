#include <random>

#include "doctest.h"
#include "eclnl/parser.hpp"
#include "eclnl/signature.hpp"
#include "eclnl/term.hpp"
#include "support/term_gen.hpp"

using namespace eclnl;

TEST_CASE("printing closed generated terms round-trips") {
  std::mt19937 rng(101);
  const Signature& sig = Signature::demo();
  for (int i = 0; i < 300; ++i) {
    testgen::GenOptions opts;
    opts.profile = i % 2 ? testgen::GenOptions::Profile::Full
                         : testgen::GenOptions::Profile::DiagramFree;
    opts.max_depth = 2 + i % 5;
    Term m = testgen::random_closed_term(rng, sig, opts);
    std::string printed = print_term(m);
    CAPTURE(printed);
    Term back = parse_term(printed, sig);
    CHECK(alpha_eq(m, back));
    CHECK(print_term(back) == printed);
  }
}

TEST_CASE("prefix operators take statement operands") {
  const Signature& sig = Signature::demo();
  Term a = parse_term("lift \\x:qubit. h x", sig);
  Term b = parse_term("lift (\\x:qubit. h x)", sig);
  CHECK(alpha_eq(a, b));
  // Prefix operators chain: the whole thing is force(lift(h)), not an
  // application of force to two arguments, and reprints without parens.
  Term c = parse_term("force lift h", sig);
  auto* f = std::get_if<Term::Force>(&c.node());
  REQUIRE(f != nullptr);
  CHECK(std::get_if<Term::Lift>(&f->inner.node()) != nullptr);
  CHECK(print_term(c) == "force lift h");
}

TEST_CASE("statement forms swallow to the right") {
  Term t = parse_term("\\x:I. x; x");
  // The body of the lambda is the whole sequence.
  auto* lam = std::get_if<Term::Lambda>(&t.node());
  REQUIRE(lam != nullptr);
  CHECK(std::get_if<Term::Seq>(&lam->body.node()) != nullptr);

  Term u = parse_term("let x = * in x; *");
  auto* let = std::get_if<Term::Let>(&u.node());
  REQUIRE(let != nullptr);
  CHECK(std::get_if<Term::Seq>(&let->body.node()) != nullptr);
}

TEST_CASE("application groups left and spans lines") {
  const Signature& sig = Signature::demo();
  Term t = parse_term("(\\x:qubit. \\y:qubit. <x, y>)\n  (new *)\n  (new *)",
                      sig);
  auto* outer = std::get_if<Term::App>(&t.node());
  REQUIRE(outer != nullptr);
  CHECK(std::get_if<Term::App>(&outer->fn.node()) != nullptr);
}

TEST_CASE("definitions end with def main") {
  const Signature& sig = Signature::demo();
  SourceProgram p = parse_program(
      "-- a reusable circuit\n"
      "def twice = \\x:qubit. h (h x)\n"
      "def main = box[qubit] lift twice\n",
      sig);
  CHECK(p.definitions.size() == 1);
  Term whole = desugar(p);
  CHECK(std::get_if<Term::Let>(&whole.node()) != nullptr);

  CHECK_THROWS_AS(parse_program("def f = *\nf", sig), ParseError);
  CHECK_THROWS_AS(parse_program("def f = *\ndef f = *\ndef main = f", sig),
                  ParseError);
  CHECK_THROWS_AS(parse_program("def main = *\ndef f = *", sig), ParseError);
}

TEST_CASE("signature line is recorded") {
  SourceProgram p = parse_program("signature \"sig.json\"\n*");
  REQUIRE(p.signature_path.has_value());
  CHECK(*p.signature_path == "sig.json");
}

TEST_CASE("free names resolve to generators only when declared") {
  const Signature& sig = Signature::demo();
  Term t = parse_term("h", sig);
  CHECK(std::get_if<Term::Const>(&t.node()) != nullptr);
  // Without a signature, h stays a variable.
  Term u = parse_term("h");
  CHECK(std::get_if<Term::Var>(&u.node()) != nullptr);
  // Binders shadow generator names.
  Term v = parse_term("\\h:I. h", sig);
  auto* lam = std::get_if<Term::Lambda>(&v.node());
  REQUIRE(lam != nullptr);
  CHECK(std::get_if<Term::Var>(&lam->body.node()) != nullptr);
}

TEST_CASE("syntax errors carry spans") {
  try {
    parse_term("let x = * in\n  #bad");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.kind == ParseError::Kind::Syntax);
    CHECK(e.span.line == 2);
  }
  CHECK_THROWS_AS(parse_term("\"unterminated"), ParseError);
  CHECK_THROWS_AS(parse_term("case * of {left x -> x}"), ParseError);
  CHECK_THROWS_AS(parse_term(""), ParseError);
  CHECK_THROWS_AS(parse_term("box[!I] lift *"), ParseError);
  CHECK_THROWS_AS(parse_term("7"), ParseError);
}

TEST_CASE("unknown wire types are rejected against a signature") {
  const Signature& sig = Signature::demo();
  try {
    parse_term("\\x:fluxon. x", sig);
    FAIL("expected a wire error");
  } catch (const ParseError& e) {
    CHECK(e.kind == ParseError::Kind::UnknownWireType);
  }
  // Without a signature the same text parses.
  CHECK_NOTHROW(parse_term("\\x:fluxon. x"));
}

TEST_CASE("comments and primes") {
  Term t = parse_term("-- leading comment\nlet x' = * in x' -- trailing");
  CHECK(std::get_if<Term::Let>(&t.node()) != nullptr);
}
