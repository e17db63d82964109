#include <string>
#include <vector>

#include "doctest.h"
#include "eclnl/diagram.hpp"
#include "eclnl/signature.hpp"

using namespace eclnl;

namespace {

const Generator& gen(const char* name) {
  const Generator* g = Signature::demo().find(Name(name));
  REQUIRE(g != nullptr);
  return *g;
}

LabelledDiagram h_node(const char* in, const char* out) {
  return one_node(gen("h"), {Name(in)}, {Name(out)});
}

}  // namespace

TEST_CASE("identity diagram has straight-through wiring") {
  LabelContext q{{Name("#a"), Name("qubit")}, {Name("#b"), Name("qubit")}};
  LabelledDiagram id = identity(q);
  id.validate();
  CHECK(id.d.nodes.empty());
  CHECK(id.dom() == q);
  CHECK(id.cod() == q);
  REQUIRE(id.d.from_input.size() == 2);
  CHECK(id.d.from_input[0] == Endpoint::out(0));
  CHECK(id.d.from_input[1] == Endpoint::out(1));
}

TEST_CASE("one_node matches the generator arity") {
  LabelledDiagram n = one_node(gen("cnot"), {Name("#a"), Name("#b")},
                               {Name("#c"), Name("#d")});
  n.validate();
  CHECK(n.d.nodes.size() == 1);
  CHECK(n.d.input_wires == std::vector<Name>{Name("qubit"), Name("qubit")});
  CHECK_THROWS_AS(one_node(gen("cnot"), {Name("#a")}, {Name("#c"), Name("#d")}),
                  DiagramError);
}

TEST_CASE("diagram_eq compares port graphs, not label names") {
  CHECK(diagram_eq(h_node("#a", "#b"), h_node("#p", "#q")));
  CHECK_FALSE(diagram_eq(h_node("#a", "#b"),
                         one_node(gen("new"), {}, {Name("#b")})));
  CHECK_FALSE(diagram_eq(h_node("#a", "#b"),
                         compose(h_node("#a", "#m"), h_node("#m", "#b"))));
}

TEST_CASE("diagram_eq distinguishes crossed wiring") {
  LabelContext q{{Name("#a"), Name("qubit")}, {Name("#b"), Name("qubit")}};
  LabelledDiagram id = identity(q);
  LabelledDiagram swap = id;
  swap.d.from_input[0] = Endpoint::out(1);
  swap.d.from_input[1] = Endpoint::out(0);
  swap.validate();
  CHECK_FALSE(diagram_eq(id, swap));
  CHECK(diagram_eq(swap, swap));
}

TEST_CASE("category and monoidal laws hold up to diagram_eq") {
  // Boundary label vectors are kept in ascending order throughout, so the
  // sorted port order of identity() lines up with every diagram's own.
  LabelledDiagram s = h_node("#a", "#b");
  LabelledDiagram t = h_node("#b", "#c");
  LabelledDiagram u = h_node("#c", "#d");

  CHECK(diagram_eq(compose(identity(s.dom()), s), s));
  CHECK(diagram_eq(compose(s, identity(s.cod())), s));
  CHECK(diagram_eq(compose(compose(s, t), u), compose(s, compose(t, u))));

  LabelledDiagram s2 = h_node("#p", "#q");
  LabelledDiagram t2 = h_node("#q", "#r");
  CHECK(diagram_eq(tensor(compose(s, t), compose(s2, t2)),
                   compose(tensor(s, s2), tensor(t, t2))));
  CHECK(diagram_eq(tensor(s, identity({})), s));
  CHECK(diagram_eq(tensor(identity({}), s), s));
  CHECK(diagram_eq(tensor(tensor(s, s2), u), tensor(s, tensor(s2, u))));
}

TEST_CASE("compose glues by label, not by port position") {
  // cnot with its outputs named in swapped order: label #d sits on port 0.
  LabelledDiagram c = one_node(gen("cnot"), {Name("#a"), Name("#b")},
                               {Name("#d"), Name("#c")});
  LabelledDiagram after = tensor(h_node("#c", "#e"), identity(LabelContext{
                                     {Name("#d"), Name("qubit")}}));
  LabelledDiagram glued = compose(c, after);
  glued.validate();
  REQUIRE(glued.d.nodes.size() == 2);
  // The h must continue cnot's second output pin (the one labelled #c).
  CHECK(glued.d.from_node[0][1] == Endpoint::node(1, 0));
  CHECK(glued.d.from_node[0][0] != Endpoint::node(1, 0));
}

TEST_CASE("compose and tensor reject bad boundaries") {
  CHECK_THROWS_AS(compose(h_node("#a", "#b"), h_node("#c", "#d")), DiagramError);
  CHECK_THROWS_AS(tensor(h_node("#a", "#b"), h_node("#a", "#c")), DiagramError);
}

TEST_CASE("closed components are compared structurally") {
  Generator src{Name("src"), {}, {Name("w")}};
  Generator snk{Name("snk"), {Name("w")}, {}};
  LabelledDiagram closed =
      compose(one_node(src, {}, {Name("#a")}), one_node(snk, {Name("#a")}, {}));
  closed.validate();
  CHECK(closed.dom_labels.empty());
  CHECK(closed.cod_labels.empty());
  CHECK(diagram_eq(closed, closed));
  CHECK_FALSE(diagram_eq(closed, identity({})));
  LabelledDiagram two = tensor(closed, closed);
  CHECK_FALSE(diagram_eq(closed, two));
  CHECK(diagram_eq(two, two));
}

TEST_CASE("validate rejects broken wiring") {
  LabelledDiagram dup = identity(LabelContext{{Name("#a"), Name("qubit")}});
  dup.dom_labels.push_back(Name("#a"));
  dup.d.input_wires.push_back(Name("qubit"));
  dup.d.from_input.push_back(Endpoint::out(0));
  CHECK_THROWS_AS(dup.validate(), DiagramError);

  LabelledDiagram cyc;
  cyc.d.nodes.push_back(Diagram::Node{Name("h"), {Name("qubit")}, {Name("qubit")}});
  cyc.d.from_node.push_back({Endpoint::node(0, 0)});
  CHECK_THROWS_AS(cyc.validate(), DiagramError);

  LabelledDiagram mis = h_node("#a", "#b");
  mis.d.input_wires[0] = Name("photon");
  CHECK_THROWS_AS(mis.validate(), DiagramError);
}

TEST_CASE("freshlabels mirrors the monoidal type shape") {
  FreshSource fresh;
  MType t = MType::tensor(MType::wire(Name("qubit")),
                          MType::tensor(MType::unit(), MType::wire(Name("qubit"))));
  auto [q, tup] = freshlabels(t, fresh);
  CHECK(q.size() == 2);
  CHECK(tup.labels() == std::vector<Name>{Name("#l0"), Name("#l1")});
  CHECK(fresh.count() == 2);
  REQUIRE(tup.kind() == LabelTuple::Kind::Pair);
  CHECK(tup.second().first().kind() == LabelTuple::Kind::Star);
}

TEST_CASE("append pastes onto the selected outputs") {
  FreshSource fresh;
  LabelContext q{{Name("#a"), Name("qubit")}, {Name("#b"), Name("qubit")}};
  LabelledDiagram s = identity(q);
  LabelledDiagram box = h_node("#x", "#y");
  auto grown = append(s, LabelTuple::label(Name("#a")),
                      LabelTuple::label(Name("#x")), box,
                      LabelTuple::label(Name("#y")), fresh);
  REQUIRE(grown.has_value());
  grown->first.validate();
  CHECK(grown->first.d.nodes.size() == 1);
  CHECK(grown->first.dom() == q);
  // #a now flows through the h; #b is untouched and still a boundary label.
  CHECK(grown->first.cod_port(Name("#b")) >= 0);
  CHECK(grown->first.cod_port(Name("#a")) == -1);
  CHECK(grown->second.labels().size() == 1);

  // Shape mismatch between the selector and the box boundary is refused.
  auto bad = append(s, LabelTuple::star(), LabelTuple::label(Name("#x")), box,
                    LabelTuple::label(Name("#y")), fresh);
  CHECK_FALSE(bad.has_value());
}

TEST_CASE("json round trip is exact and canonical") {
  LabelledDiagram bell = compose(
      tensor(h_node("#a", "#m"), identity(LabelContext{{Name("#b"), Name("qubit")}})),
      one_node(gen("cnot"), {Name("#b"), Name("#m")}, {Name("#c"), Name("#d")}));
  std::string text = diagram_to_json(bell);
  LabelledDiagram back = diagram_from_json(text, Signature::demo());
  CHECK(diagram_eq(bell, back));
  CHECK(diagram_to_json(back) == text);
  CHECK(back.dom() == bell.dom());
  CHECK(back.cod_labels == bell.cod_labels);
}

TEST_CASE("dot output names ports and generators") {
  std::string dot = diagram_to_dot(h_node("#a", "#b"));
  CHECK(dot.find("digraph") != std::string::npos);
  CHECK(dot.find("h") != std::string::npos);
  CHECK(dot.find("in0") != std::string::npos);
  CHECK(dot.find("out0") != std::string::npos);
}
