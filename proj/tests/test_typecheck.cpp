#include <random>

#include "doctest.h"
#include "eclnl/diagram.hpp"
#include "eclnl/parser.hpp"
#include "eclnl/typecheck.hpp"
#include "support/declarative.hpp"
#include "support/term_gen.hpp"

using namespace eclnl;

namespace {

const Signature& sig() { return Signature::demo(); }

TypeError::Kind kind_of(const std::string& src,
                        std::optional<Type> expected = std::nullopt) {
  try {
    check({}, {}, parse_term(src, sig()), sig(), expected);
  } catch (const TypeError& e) {
    return e.kind;
  }
  throw std::logic_error("expected " + src + " to be ill-typed");
}

Type type_of(const std::string& src) {
  return check({}, {}, parse_term(src, sig()), sig()).type;
}

}  // namespace

TEST_CASE("well-typed samples") {
  CHECK(type_of("*") == Type::unit());
  CHECK(type_of("lift h") ==
        Type::bang(Type::lolli(Type::wire(Name("qubit")),
                               Type::wire(Name("qubit")))));
  CHECK(print_type(type_of("box[qubit] lift h")) == "Diag(qubit, qubit)");
  CHECK(type_of("\\x:I. <x, x>") ==
        Type::lolli(Type::unit(), Type::tensor(Type::unit(), Type::unit())));
  CHECK(type_of("let <x, y> = <*, lift *> in force y; x") == Type::unit());
  CHECK(type_of("rec x:!I. force x") == Type::unit());
  CHECK(print_type(type_of("\\x:0. initial[qubit] x")) == "0 -o qubit");
}

TEST_CASE("every error kind is reachable") {
  CHECK(kind_of("nope") == TypeError::Kind::UnknownVariable);
  CHECK(kind_of("<*, *>; *") == TypeError::Kind::TypeMismatch);
  CHECK(kind_of("* *") == TypeError::Kind::NotAFunction);
  CHECK(kind_of("force *") == TypeError::Kind::NotABang);
  CHECK(kind_of("apply(*, *)") == TypeError::Kind::NotADiag);
  CHECK(kind_of("\\f:I -o I. *") == TypeError::Kind::LinearVarUnused);
  CHECK(kind_of("\\f:I -o I. <f, f>") == TypeError::Kind::LinearVarReused);
  CHECK(kind_of("\\f:I -o I. lift (f *)") ==
        TypeError::Kind::LinearVarInIntuitionisticPosition);
  CHECK(kind_of("\\f:I -o I. rec x:!I. f *") ==
        TypeError::Kind::LinearVarInIntuitionisticPosition);
  CHECK(kind_of("\\f:I -o I. \\g:I -o I. case left[I, I] * of "
                "{left u -> f u | right u -> g u}") ==
        TypeError::Kind::CaseBranchResourceMismatch);

  try {
    check({}, {}, Term::constant(Name("mystery")), sig());
    FAIL("unknown constant accepted");
  } catch (const TypeError& e) {
    CHECK(e.kind == TypeError::Kind::UnknownConstant);
  }

  LabelContext q{{Name("#a"), Name("qubit")}};
  try {
    check({}, q, Term::star(), sig());
    FAIL("unused label accepted");
  } catch (const TypeError& e) {
    CHECK(e.kind == TypeError::Kind::LabelUnused);
  }
  try {
    check({}, {}, Term::label(Name("#a")), sig());
    FAIL("dangling label accepted");
  } catch (const TypeError& e) {
    CHECK(e.kind == TypeError::Kind::DanglingLabel);
  }
  try {
    check({}, q, Term::pair(Term::label(Name("#a")), Term::label(Name("#a"))),
          sig());
    FAIL("reused label accepted");
  } catch (const TypeError& e) {
    CHECK(e.kind == TypeError::Kind::LabelReused);
  }
}

TEST_CASE("shadowing keeps usage per binder") {
  // The outer linear x is consumed by the bound term, the inner
  // intuitionistic x by the body.
  VarContext g;
  g = g.extend(Name("x"), Type::lolli(Type::unit(), Type::unit()));
  Term m = parse_term("let x = x * in x");
  CHECK(check(g, {}, m, sig()).type == Type::unit());
  // A linear binder shadowing a linear binder, both consumed.
  Term n = parse_term("\\x:I -o I. let x = \\y:I. x y in x *");
  CHECK(check({}, {}, n, sig()).type ==
        Type::lolli(Type::lolli(Type::unit(), Type::unit()), Type::unit()));
  // Duplicate names in a let-pair behave like nested binders.
  Term p = parse_term("let <x, x> = <*, \\y:I. y> in x *");
  CHECK(check({}, {}, p, sig()).type == Type::unit());
}

TEST_CASE("expected types fill in omitted injection annotations") {
  Type boolt = Type::sum(Type::unit(), Type::unit());
  Term m = parse_term("left *");
  TypingDerivation d = check({}, {}, m, sig(), boolt);
  CHECK(d.type == boolt);
  auto* inj = std::get_if<Term::InjLeft>(&d.term.node());
  REQUIRE(inj != nullptr);
  CHECK(inj->right_type.has_value());
  CHECK(*inj->right_type == Type::unit());

  // The annotation flows through let, case, pairs and lambda bodies.
  Term n = parse_term(
      "\\b:I + I. case b of {left u -> <right *, u> | right u -> <left u, *>}");
  Type want = Type::lolli(boolt, Type::tensor(boolt, Type::unit()));
  CHECK(check({}, {}, n, sig(), want).type == want);
  // Without the expectation the annotation is genuinely missing.
  CHECK_THROWS_AS(check({}, {}, n, sig()), TypeError);
}

TEST_CASE("weakening holds for intuitionistic variables only") {
  std::mt19937 rng(55);
  testgen::GenOptions opts;
  opts.profile = testgen::GenOptions::Profile::Full;
  opts.max_depth = 4;
  for (int i = 0; i < 120; ++i) {
    Term m = testgen::random_closed_term(rng, sig(), opts);
    Type t = check({}, {}, m, sig()).type;
    VarContext g;
    g = g.extend(Name("fresh_p"), Type::bang(Type::unit()));
    CHECK(check(g, {}, m, sig()).type == t);
    VarContext h;
    h = h.extend(Name("fresh_l"), Type::lolli(Type::unit(), Type::unit()));
    try {
      check(h, {}, m, sig());
      FAIL("linear weakening accepted");
    } catch (const TypeError& e) {
      CHECK(e.kind == TypeError::Kind::LinearVarUnused);
    }
  }
}

TEST_CASE("substituting a closed value preserves the type") {
  std::mt19937 rng(56);
  testgen::GenOptions opts;
  opts.profile = testgen::GenOptions::Profile::DiagramFree;
  opts.max_depth = 4;
  Name x("subject");
  for (int i = 0; i < 150; ++i) {
    Term v = testgen::random_closed_term(rng, sig(), opts);
    Type a = check({}, {}, v, sig()).type;
    // Bodies that use x once, twice (when duplicable), or not at all.
    std::vector<Term> bodies = {Term::var(x),
                                Term::pair(Term::var(x), Term::star())};
    if (is_intuitionistic(a)) {
      bodies.push_back(Term::pair(Term::var(x), Term::var(x)));
      bodies.push_back(Term::star());
    }
    for (const Term& body : bodies) {
      VarContext g;
      g = g.extend(x, a);
      Type before = check(g, {}, body, sig()).type;
      CHECK(check({}, {}, substitute(body, v, x), sig()).type == before);
    }
  }
}

TEST_CASE("declarative derivations agree with the checker") {
  std::mt19937 rng(57);
  testgen::GenOptions opts;
  opts.profile = testgen::GenOptions::Profile::DiagramFree;
  opts.max_depth = 4;
  int multi = 0;
  for (int i = 0; i < 150; ++i) {
    Term m = testgen::random_closed_term(rng, sig(), opts);
    TypingDerivation d = check({}, {}, m, sig());
    auto all = testgen::derive_all({}, d.term, sig(), 32);
    REQUIRE(!all.empty());
    if (all.size() > 1) ++multi;
    for (const TypingDerivation& alt : all) CHECK(alt.type == d.type);
  }
  // The search space is genuinely nondeterministic for some programs.
  CHECK(multi > 0);
}

TEST_CASE("configuration typing splits used and unused labels") {
  LabelContext q{{Name("#a"), Name("qubit")}, {Name("#b"), Name("qubit")}};
  LabelledDiagram s = identity(q);
  Term m = parse_term("h", sig());
  m = Term::app(m, Term::label(Name("#a")));
  ConfigCheck cc = check_configuration(q, s, m, Type::wire(Name("qubit")), sig());
  CHECK(cc.used == LabelContext{{Name("#a"), Name("qubit")}});
  CHECK(cc.unused == LabelContext{{Name("#b"), Name("qubit")}});

  // dom(s) must equal the ambient labels.
  CHECK_THROWS_AS(check_configuration({}, s, m, Type::wire(Name("qubit")), sig()),
                  TypeError);
  // Labels outside cod(s) dangle.
  Term bad = Term::label(Name("#zzz"));
  CHECK_THROWS_AS(
      check_configuration(q, s, bad, Type::wire(Name("qubit")), sig()),
      TypeError);
}

TEST_CASE("generated configurations typecheck by construction") {
  std::mt19937 rng(58);
  testgen::GenOptions opts;
  opts.profile = testgen::GenOptions::Profile::Full;
  for (int i = 0; i < 200; ++i) {
    opts.max_depth = 2 + i % 5;
    testgen::GenConfig c = testgen::random_configuration(rng, sig(), opts);
    LabelContext used;
    for (Name l : free_labels(c.term)) used.emplace(l, c.q.at(l));
    Type a = check({}, used, c.term, sig()).type;
    CHECK_NOTHROW(check_configuration(c.q, identity(c.q), c.term, a, sig()));
  }
}
