#include <random>

#include "doctest.h"
#include "eclnl/diagram.hpp"
#include "eclnl/driver.hpp"
#include "eclnl/eval.hpp"
#include "eclnl/parser.hpp"
#include "eclnl/typecheck.hpp"
#include "support/term_gen.hpp"

using namespace eclnl;

namespace {

const Signature& sig() { return Signature::demo(); }

EvalResult run_src(const std::string& src, uint64_t fuel = 100000) {
  Term m = check({}, {}, parse_term(src, sig()), sig()).term;
  return evaluate_closed(m, sig(), fuel);
}

const Term::BoxedDiag& boxed_of(const Term& v) {
  auto* b = std::get_if<Term::BoxedDiag>(&v.node());
  REQUIRE(b != nullptr);
  return *b;
}

}  // namespace

TEST_CASE("box builds and restores") {
  EvalResult r = run_src("box[qubit] lift h");
  REQUIRE(r.outcome.kind == Outcome::Kind::Value);
  const auto& b = boxed_of(r.outcome.value);
  CHECK(b.diagram.d.nodes.size() == 1);
  CHECK(b.diagram.d.nodes[0].gen == Name("h"));
  CHECK(b.diagram.dom_labels.size() == 1);
  CHECK(b.diagram.cod_labels.size() == 1);
  // The ambient diagram is untouched.
  CHECK(r.diagram.d.nodes.empty());
  CHECK(r.diagram.dom_labels.empty());
}

TEST_CASE("generators grow the ambient diagram in order") {
  EvalResult r = run_src("let x = new * in let y = new * in cnot <h x, y>");
  REQUIRE(r.outcome.kind == Outcome::Kind::Value);
  REQUIRE(r.diagram.d.nodes.size() == 4);
  CHECK(r.diagram.d.nodes[0].gen == Name("new"));
  CHECK(r.diagram.d.nodes[1].gen == Name("new"));
  CHECK(r.diagram.d.nodes[2].gen == Name("h"));
  CHECK(r.diagram.d.nodes[3].gen == Name("cnot"));
  CHECK(r.diagram.dom_labels.empty());
  CHECK(r.diagram.cod_labels.size() == 2);
  // The value is the tuple of the cnot's fresh output labels, in order.
  auto t = term_to_tuple(r.outcome.value);
  REQUIRE(t.has_value());
  CHECK(t->labels() == r.diagram.cod_labels);
}

TEST_CASE("boxing is parametric: the function runs on fresh labels") {
  // Boxing inside a larger program leaves ambient wires alone and the
  // boxed diagram sees only its own inputs.
  EvalResult r = run_src(
      "let q = new * in <box[qubit] lift \\x:qubit. h x, h q>");
  REQUIRE(r.outcome.kind == Outcome::Kind::Value);
  auto* p = std::get_if<Term::Pair>(&r.outcome.value.node());
  REQUIRE(p != nullptr);
  const auto& b = boxed_of(p->first);
  CHECK(b.diagram.d.nodes.size() == 1);
  CHECK(r.diagram.d.nodes.size() == 2);  // new and h
}

TEST_CASE("apply pastes a boxed diagram onto ambient wires") {
  EvalResult r = run_src(
      "let q = new * in apply(box[qubit] lift \\x:qubit. h (h x), q)");
  REQUIRE(r.outcome.kind == Outcome::Kind::Value);
  CHECK(r.diagram.d.nodes.size() == 3);  // new, then the two pasted h's
  CHECK(r.diagram.cod_labels.size() == 1);
}

TEST_CASE("apply handles pass-through wires in the boxed diagram") {
  // The boxed identity has the same label on both boundaries; pasting it
  // must still attach the input to the argument wire.
  EvalResult r = run_src("apply(box[qubit] lift \\x:qubit. x, new *)");
  REQUIRE(r.outcome.kind == Outcome::Kind::Value);
  CHECK(r.diagram.d.nodes.size() == 1);  // just the new
  CHECK(r.diagram.cod_labels.size() == 1);

  EvalResult s = run_src(
      "apply(box[qubit * qubit] lift \\p:qubit * qubit. "
      "let <a, b> = p in <b, a>, <new *, new *>)");
  REQUIRE(s.outcome.kind == Outcome::Kind::Value);
  CHECK(s.diagram.d.nodes.size() == 2);
  CHECK(s.diagram.cod_labels.size() == 2);

  // Half pass-through: one leg goes through h, the other is straight.
  EvalResult t = run_src(
      "apply(box[qubit * qubit] lift \\p:qubit * qubit. "
      "let <a, b> = p in <h a, b>, <new *, new *>)");
  REQUIRE(t.outcome.kind == Outcome::Kind::Value);
  CHECK(t.diagram.d.nodes.size() == 3);
}

TEST_CASE("force cancels lift and rec unfolds") {
  EvalResult r = run_src("force lift <*, *>");
  REQUIRE(r.outcome.kind == Outcome::Kind::Value);
  CHECK(std::get_if<Term::Pair>(&r.outcome.value.node()) != nullptr);

  EvalResult t = run_src(
      "rec x:!I. case left[I, I] * of {left u -> u | right u -> force x}");
  CHECK(t.outcome.kind == Outcome::Kind::Value);

  EvalResult d = run_src("rec x:!I. force x", 500);
  CHECK(d.outcome.kind == Outcome::Kind::FuelExhausted);
}

TEST_CASE("fuel boundary is exact and value is fuel-independent") {
  Term m = check({}, {}, parse_term("force lift (*; <*, left[I, I] *>)", sig()),
                 sig())
               .term;
  EvalResult full = evaluate_closed(m, sig(), 100000);
  REQUIRE(full.outcome.kind == Outcome::Kind::Value);
  EvalResult exact = evaluate_closed(m, sig(), full.steps);
  REQUIRE(exact.outcome.kind == Outcome::Kind::Value);
  CHECK(alpha_eq(exact.outcome.value, full.outcome.value));
  CHECK(exact.steps == full.steps);
  EvalResult starve = evaluate_closed(m, sig(), full.steps - 1);
  CHECK(starve.outcome.kind == Outcome::Kind::FuelExhausted);
}

TEST_CASE("ill-typed stuck terms report the failing rule") {
  EvalResult r = evaluate_closed(Term::app(Term::star(), Term::star()), sig(),
                                 100);
  REQUIRE(r.outcome.kind == Outcome::Kind::Error);
  CHECK(r.outcome.rule == "app");

  EvalResult f = evaluate_closed(Term::force(Term::star()), sig(), 100);
  REQUIRE(f.outcome.kind == Outcome::Kind::Error);
  CHECK(f.outcome.rule == "force");

  EvalResult v = evaluate_closed(Term::var(Name("ghost")), sig(), 100);
  REQUIRE(v.outcome.kind == Outcome::Kind::Error);
  CHECK(v.outcome.rule == "var");
}

TEST_CASE("evaluation is deterministic") {
  std::mt19937 rng(77);
  testgen::GenOptions opts;
  opts.profile = testgen::GenOptions::Profile::Full;
  opts.max_depth = 5;
  for (int i = 0; i < 60; ++i) {
    testgen::GenConfig c = testgen::random_configuration(rng, sig(), opts);
    FreshSource f1, f2;
    EvalResult a = evaluate(identity(c.q), c.term, sig(), 5000, f1);
    EvalResult b = evaluate(identity(c.q), c.term, sig(), 5000, f2);
    CHECK(a.outcome.kind == b.outcome.kind);
    CHECK(a.steps == b.steps);
    if (a.outcome.kind == Outcome::Kind::Value) {
      CHECK(alpha_eq(a.outcome.value, b.outcome.value));
      CHECK(diagram_eq(a.diagram, b.diagram));
      CHECK(diagram_to_json(a.diagram) == diagram_to_json(b.diagram));
    }
  }
}

TEST_CASE("well-typed configurations never go wrong and preserve typing") {
  std::mt19937 rng(78);
  testgen::GenOptions opts;
  opts.profile = testgen::GenOptions::Profile::Full;
  opts.allow_divergence = true;
  int values = 0;
  for (int i = 0; i < 300; ++i) {
    opts.max_depth = 2 + i % 5;
    testgen::GenConfig c = testgen::random_configuration(rng, sig(), opts);
    LabelContext used;
    for (Name l : free_labels(c.term)) used.emplace(l, c.q.at(l));
    Type a = check({}, used, c.term, sig()).type;
    ConfigCheck before =
        check_configuration(c.q, identity(c.q), c.term, a, sig());

    FreshSource fresh;
    EvalResult r = evaluate(identity(c.q), c.term, sig(), 10000, fresh);
    CHECK(r.outcome.kind != Outcome::Kind::Error);
    if (r.outcome.kind != Outcome::Kind::Value) continue;
    ++values;
    ConfigCheck after =
        check_configuration(c.q, r.diagram, r.outcome.value, a, sig());
    CHECK(after.unused == before.unused);
  }
  CHECK(values > 150);
}

TEST_CASE("run reports are stable and carry boxed diagrams") {
  SourceProgram p = parse_program(
      "<box[qubit] lift h, box[qubit] lift \\x:qubit. h (h x)>", sig());
  RunReport r = run_program(p, sig(), 100000);
  CHECK(r.boxed_values.size() == 2);
  std::string once = run_report_json(r);
  std::string twice = run_report_json(run_program(p, sig(), 100000));
  CHECK(once == twice);
}
