#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "eclnl/names.hpp"
#include "eclnl/signature.hpp"
#include "eclnl/types.hpp"

namespace eclnl {

struct DiagramError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One end of a wire. In = diagram input port, Out = diagram output port,
// Node = pin of a generator node (an output pin when used as a wire source,
// an input pin when used as a destination).
struct Endpoint {
  enum class Kind : uint8_t { In, Out, Node };
  Kind kind = Kind::In;
  uint32_t index = 0;  // port index, or node id for Kind::Node
  uint32_t pin = 0;    // pin index, Kind::Node only

  static Endpoint in(uint32_t i) { return {Kind::In, i, 0}; }
  static Endpoint out(uint32_t i) { return {Kind::Out, i, 0}; }
  static Endpoint node(uint32_t id, uint32_t pin) { return {Kind::Node, id, pin}; }
  bool operator==(const Endpoint&) const = default;
};

// A morphism of the free symmetric monoidal category over a signature,
// represented as an acyclic port graph. Wires are linear: every source
// (diagram input or node output pin) carries exactly one edge, recorded in
// from_input / from_node, and every destination (diagram output or node
// input pin) receives exactly one. There are no explicit swap nodes; the
// symmetry lives in the wiring.
struct Diagram {
  struct Node {
    Name gen;
    std::vector<Name> ins;   // wire types per input pin
    std::vector<Name> outs;  // wire types per output pin
  };

  std::vector<Name> input_wires;   // wire type per input port
  std::vector<Name> output_wires;  // wire type per output port
  std::vector<Node> nodes;
  std::vector<Endpoint> from_input;              // destination per input port
  std::vector<std::vector<Endpoint>> from_node;  // destination per node output pin

  size_t node_count() const { return nodes.size(); }

  // Sources indexed by destination, derived from the forward maps.
  struct Reverse {
    std::vector<Endpoint> out_src;                   // per output port
    std::vector<std::vector<Endpoint>> node_in_src;  // per node input pin
  };
  Reverse reverse() const;

  // Checks linearity (exactly one edge per pin/port), wire-type agreement
  // along every edge, index sanity, and acyclicity. Throws DiagramError.
  void validate() const;
};

// A diagram whose boundary ports are named by labels: dom_labels[i] names
// input port i, cod_labels[j] names output port j. Labels are distinct
// within each side; together with the port wire types they determine the
// label contexts dom() and cod().
struct LabelledDiagram {
  Diagram d;
  std::vector<Name> dom_labels;
  std::vector<Name> cod_labels;

  LabelContext dom() const;
  LabelContext cod() const;
  // Input/output port index of a label, or -1.
  int dom_port(Name l) const;
  int cod_port(Name l) const;

  void validate() const;  // diagram validity plus label invariants
};

// Deterministic source of fresh labels #l0, #l1, ...
class FreshSource {
 public:
  Name fresh() { return Name("#l" + std::to_string(next_++)); }
  uint64_t count() const { return next_; }

 private:
  uint64_t next_ = 0;
};

// id_Q: ports in the deterministic (string-sorted) order of Q.
LabelledDiagram identity(const LabelContext& q);

// Single-generator diagram with the given boundary labels (sizes must match
// the generator's arities).
LabelledDiagram one_node(const Generator& g, const std::vector<Name>& dom_labels,
                         const std::vector<Name>& cod_labels);

// Parallel composition; label sets must be disjoint side-by-side.
LabelledDiagram tensor(const LabelledDiagram& s, const LabelledDiagram& t);

// Sequential composition s then t; requires cod(s) == dom(t) as label
// contexts (order-independent). Gluing is by label.
LabelledDiagram compose(const LabelledDiagram& s, const LabelledDiagram& t);

// Fresh label context and tuple shaped like t: a fresh label per Wire leaf,
// * per Unit leaf.
std::pair<LabelContext, LabelTuple> freshlabels(const MType& t, FreshSource& fresh);

// Paste d (a boxed diagram with boundary tuples l and l2) onto the outputs
// of s selected by k: renames d's inputs to k's labels and its outputs to
// fresh labels, tensors with the identity on the untouched outputs of s and
// composes. Returns the grown diagram and the fresh output tuple, or
// nullopt when shapes, labels or wire types do not line up.
std::optional<std::pair<LabelledDiagram, LabelTuple>> append(
    const LabelledDiagram& s, const LabelTuple& k, const LabelTuple& l,
    const LabelledDiagram& d, const LabelTuple& l2, FreshSource& fresh);

// Isomorphism of labelled diagrams: a bijective renaming of labels and node
// ids preserving wire types, generator names, port order and connectivity.
// Linear in the wiring reachable from the boundary; closed components are
// matched by canonical encoding.
bool diagram_eq(const LabelledDiagram& a, const LabelledDiagram& b);

// JSON schema:
//   {"dom": [[label, wire]...], "cod": [[label, wire]...],
//    "nodes": [[id, gen]...], "edges": [[src, dst]...]}
// with src/dst one of ["in", i] | ["out", i] | ["node", id, pin].
// Serialization is canonical: byte-identical for equal diagrams.
std::string diagram_to_json(const LabelledDiagram& s);
// Needs the signature to recover node pin wire types; validates fully.
LabelledDiagram diagram_from_json(const std::string& text, const Signature& sig);

std::string diagram_to_dot(const LabelledDiagram& s);

}  // namespace eclnl
