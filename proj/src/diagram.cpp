#include "eclnl/diagram.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

namespace eclnl {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Diagram basics

Diagram::Reverse Diagram::reverse() const {
  Reverse r;
  r.out_src.assign(output_wires.size(), Endpoint{});
  std::vector<int> out_seen(output_wires.size(), 0);
  r.node_in_src.resize(nodes.size());
  std::vector<std::vector<int>> in_seen(nodes.size());
  for (size_t n = 0; n < nodes.size(); ++n) {
    r.node_in_src[n].assign(nodes[n].ins.size(), Endpoint{});
    in_seen[n].assign(nodes[n].ins.size(), 0);
  }
  auto record = [&](Endpoint src, Endpoint dst) {
    if (dst.kind == Endpoint::Kind::Out) {
      if (dst.index >= output_wires.size())
        throw DiagramError("edge into nonexistent output port");
      r.out_src[dst.index] = src;
      out_seen[dst.index]++;
    } else if (dst.kind == Endpoint::Kind::Node) {
      if (dst.index >= nodes.size() || dst.pin >= nodes[dst.index].ins.size())
        throw DiagramError("edge into nonexistent node pin");
      r.node_in_src[dst.index][dst.pin] = src;
      in_seen[dst.index][dst.pin]++;
    } else {
      throw DiagramError("edge destination cannot be an input port");
    }
  };
  for (size_t i = 0; i < from_input.size(); ++i)
    record(Endpoint::in(static_cast<uint32_t>(i)), from_input[i]);
  for (size_t n = 0; n < from_node.size(); ++n)
    for (size_t p = 0; p < from_node[n].size(); ++p)
      record(Endpoint::node(static_cast<uint32_t>(n), static_cast<uint32_t>(p)),
             from_node[n][p]);
  for (int c : out_seen)
    if (c != 1) throw DiagramError("output port must receive exactly one wire");
  for (auto& pins : in_seen)
    for (int c : pins)
      if (c != 1) throw DiagramError("node input pin must receive exactly one wire");
  return r;
}

void Diagram::validate() const {
  if (from_input.size() != input_wires.size())
    throw DiagramError("input wiring size mismatch");
  if (from_node.size() != nodes.size())
    throw DiagramError("node wiring size mismatch");
  for (size_t n = 0; n < nodes.size(); ++n)
    if (from_node[n].size() != nodes[n].outs.size())
      throw DiagramError("node output wiring size mismatch");

  auto src_wire = [&](Endpoint e) -> Name {
    if (e.kind == Endpoint::Kind::In) return input_wires.at(e.index);
    return nodes.at(e.index).outs.at(e.pin);
  };
  auto dst_wire = [&](Endpoint e) -> Name {
    if (e.kind == Endpoint::Kind::Out) return output_wires.at(e.index);
    return nodes.at(e.index).ins.at(e.pin);
  };
  auto check_edge = [&](Endpoint src, Endpoint dst) {
    if (src_wire(src) != dst_wire(dst))
      throw DiagramError("wire type mismatch along an edge");
  };
  for (size_t i = 0; i < from_input.size(); ++i)
    check_edge(Endpoint::in(static_cast<uint32_t>(i)), from_input[i]);
  for (size_t n = 0; n < from_node.size(); ++n)
    for (size_t p = 0; p < from_node[n].size(); ++p)
      check_edge(Endpoint::node(static_cast<uint32_t>(n), static_cast<uint32_t>(p)),
                 from_node[n][p]);

  reverse();  // enforces the exactly-one-edge-per-destination invariant

  // Acyclicity over the node-to-node edges.
  std::vector<int> state(nodes.size(), 0);  // 0 new, 1 open, 2 done
  std::vector<uint32_t> stack;
  for (uint32_t root = 0; root < nodes.size(); ++root) {
    if (state[root] != 0) continue;
    stack.push_back(root);
    while (!stack.empty()) {
      uint32_t n = stack.back();
      if (state[n] == 0) {
        state[n] = 1;
        for (const Endpoint& e : from_node[n]) {
          if (e.kind != Endpoint::Kind::Node) continue;
          if (state[e.index] == 1) throw DiagramError("diagram contains a cycle");
          if (state[e.index] == 0) stack.push_back(e.index);
        }
      } else {
        state[n] = 2;
        stack.pop_back();
      }
    }
  }
}

// ---------------------------------------------------------------------------
// LabelledDiagram

LabelContext LabelledDiagram::dom() const {
  LabelContext q;
  for (size_t i = 0; i < dom_labels.size(); ++i) q[dom_labels[i]] = d.input_wires[i];
  return q;
}

LabelContext LabelledDiagram::cod() const {
  LabelContext q;
  for (size_t i = 0; i < cod_labels.size(); ++i) q[cod_labels[i]] = d.output_wires[i];
  return q;
}

int LabelledDiagram::dom_port(Name l) const {
  for (size_t i = 0; i < dom_labels.size(); ++i)
    if (dom_labels[i] == l) return static_cast<int>(i);
  return -1;
}

int LabelledDiagram::cod_port(Name l) const {
  for (size_t i = 0; i < cod_labels.size(); ++i)
    if (cod_labels[i] == l) return static_cast<int>(i);
  return -1;
}

void LabelledDiagram::validate() const {
  d.validate();
  if (dom_labels.size() != d.input_wires.size() ||
      cod_labels.size() != d.output_wires.size())
    throw DiagramError("boundary label count mismatch");
  std::set<Name> seen;
  for (Name l : dom_labels)
    if (!seen.insert(l).second)
      throw DiagramError("duplicate input label " + l.str());
  seen.clear();
  for (Name l : cod_labels)
    if (!seen.insert(l).second)
      throw DiagramError("duplicate output label " + l.str());
}

// ---------------------------------------------------------------------------
// Constructions

LabelledDiagram identity(const LabelContext& q) {
  LabelledDiagram s;
  uint32_t i = 0;
  for (const auto& [label, wire] : q) {
    s.dom_labels.push_back(label);
    s.cod_labels.push_back(label);
    s.d.input_wires.push_back(wire);
    s.d.output_wires.push_back(wire);
    s.d.from_input.push_back(Endpoint::out(i));
    ++i;
  }
  return s;
}

LabelledDiagram one_node(const Generator& g, const std::vector<Name>& dom_labels,
                         const std::vector<Name>& cod_labels) {
  if (dom_labels.size() != g.ins.size() || cod_labels.size() != g.outs.size())
    throw DiagramError("boundary labels do not match generator arity");
  LabelledDiagram s;
  s.dom_labels = dom_labels;
  s.cod_labels = cod_labels;
  s.d.input_wires = g.ins;
  s.d.output_wires = g.outs;
  s.d.nodes.push_back(Diagram::Node{g.name, g.ins, g.outs});
  s.d.from_node.resize(1);
  for (uint32_t p = 0; p < g.ins.size(); ++p)
    s.d.from_input.push_back(Endpoint::node(0, p));
  for (uint32_t p = 0; p < g.outs.size(); ++p)
    s.d.from_node[0].push_back(Endpoint::out(p));
  return s;
}

LabelledDiagram tensor(const LabelledDiagram& s, const LabelledDiagram& t) {
  for (Name l : t.dom_labels)
    if (s.dom_port(l) >= 0)
      throw DiagramError("tensor: input label " + l.str() + " on both sides");
  for (Name l : t.cod_labels)
    if (s.cod_port(l) >= 0)
      throw DiagramError("tensor: output label " + l.str() + " on both sides");

  const uint32_t node_off = static_cast<uint32_t>(s.d.nodes.size());
  const uint32_t out_off = static_cast<uint32_t>(s.d.output_wires.size());
  auto shift = [&](Endpoint e) {
    if (e.kind == Endpoint::Kind::Out) e.index += out_off;
    else e.index += node_off;
    return e;
  };

  LabelledDiagram r = s;
  r.dom_labels.insert(r.dom_labels.end(), t.dom_labels.begin(), t.dom_labels.end());
  r.cod_labels.insert(r.cod_labels.end(), t.cod_labels.begin(), t.cod_labels.end());
  r.d.input_wires.insert(r.d.input_wires.end(), t.d.input_wires.begin(), t.d.input_wires.end());
  r.d.output_wires.insert(r.d.output_wires.end(), t.d.output_wires.begin(), t.d.output_wires.end());
  r.d.nodes.insert(r.d.nodes.end(), t.d.nodes.begin(), t.d.nodes.end());
  for (const Endpoint& e : t.d.from_input) r.d.from_input.push_back(shift(e));
  for (const auto& pins : t.d.from_node) {
    std::vector<Endpoint> shifted;
    shifted.reserve(pins.size());
    for (const Endpoint& e : pins) shifted.push_back(shift(e));
    r.d.from_node.push_back(std::move(shifted));
  }
  return r;
}

LabelledDiagram compose(const LabelledDiagram& s, const LabelledDiagram& t) {
  if (s.cod() != t.dom())
    throw DiagramError("compose: middle boundary label contexts differ");

  const uint32_t node_off = static_cast<uint32_t>(s.d.nodes.size());
  auto shift_t = [&](Endpoint e) {
    if (e.kind == Endpoint::Kind::Node) e.index += node_off;
    return e;
  };
  // Where does t continue the wire that s delivers to its output port j?
  auto continuation = [&](uint32_t s_out_port) -> Endpoint {
    Name label = s.cod_labels[s_out_port];
    int t_in = t.dom_port(label);
    return shift_t(t.d.from_input[static_cast<size_t>(t_in)]);
  };
  auto map_s_dst = [&](Endpoint e) -> Endpoint {
    if (e.kind == Endpoint::Kind::Out) return continuation(e.index);
    return e;
  };

  LabelledDiagram r;
  r.dom_labels = s.dom_labels;
  r.cod_labels = t.cod_labels;
  r.d.input_wires = s.d.input_wires;
  r.d.output_wires = t.d.output_wires;
  r.d.nodes = s.d.nodes;
  r.d.nodes.insert(r.d.nodes.end(), t.d.nodes.begin(), t.d.nodes.end());
  for (const Endpoint& e : s.d.from_input) r.d.from_input.push_back(map_s_dst(e));
  for (const auto& pins : s.d.from_node) {
    std::vector<Endpoint> mapped;
    mapped.reserve(pins.size());
    for (const Endpoint& e : pins) mapped.push_back(map_s_dst(e));
    r.d.from_node.push_back(std::move(mapped));
  }
  for (const auto& pins : t.d.from_node) {
    std::vector<Endpoint> shifted;
    shifted.reserve(pins.size());
    for (const Endpoint& e : pins) shifted.push_back(shift_t(e));
    r.d.from_node.push_back(std::move(shifted));
  }
  return r;
}

std::pair<LabelContext, LabelTuple> freshlabels(const MType& t, FreshSource& fresh) {
  switch (t.kind()) {
    case MType::Kind::Unit:
      return {LabelContext{}, LabelTuple::star()};
    case MType::Kind::Wire: {
      Name l = fresh.fresh();
      return {LabelContext{{l, t.wire_name()}}, LabelTuple::label(l)};
    }
    case MType::Kind::Tensor: {
      auto [qa, ta] = freshlabels(t.left(), fresh);
      auto [qb, tb] = freshlabels(t.right(), fresh);
      qa.insert(qb.begin(), qb.end());
      return {std::move(qa), LabelTuple::pair(ta, tb)};
    }
  }
  throw std::logic_error("unreachable");
}

namespace {

// Builds a tuple of fresh labels with the same shape as t, recording the
// positional renaming old -> fresh.
LabelTuple fresh_like(const LabelTuple& t, FreshSource& fresh,
                      std::map<Name, Name>& renaming) {
  switch (t.kind()) {
    case LabelTuple::Kind::Star:
      return LabelTuple::star();
    case LabelTuple::Kind::Label: {
      Name n = fresh.fresh();
      renaming[t.label_name()] = n;
      return LabelTuple::label(n);
    }
    case LabelTuple::Kind::Pair: {
      // Sequenced so fresh names are handed out left to right.
      LabelTuple a = fresh_like(t.first(), fresh, renaming);
      LabelTuple b = fresh_like(t.second(), fresh, renaming);
      return LabelTuple::pair(std::move(a), std::move(b));
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace

std::optional<std::pair<LabelledDiagram, LabelTuple>> append(
    const LabelledDiagram& s, const LabelTuple& k, const LabelTuple& l,
    const LabelledDiagram& d, const LabelTuple& l2, FreshSource& fresh) {
  if (!LabelTuple::same_shape(k, l)) return std::nullopt;

  // l must enumerate exactly dom(d), l2 exactly cod(d).
  const LabelContext d_dom = d.dom();
  const LabelContext d_cod = d.cod();
  std::vector<Name> l_flat = l.labels();
  std::vector<Name> k_flat = k.labels();
  std::vector<Name> l2_flat = l2.labels();
  {
    std::set<Name> ls(l_flat.begin(), l_flat.end());
    if (ls.size() != l_flat.size() || ls.size() != d_dom.size()) return std::nullopt;
    for (Name n : l_flat)
      if (d_dom.count(n) == 0) return std::nullopt;
    std::set<Name> l2s(l2_flat.begin(), l2_flat.end());
    if (l2s.size() != l2_flat.size() || l2s.size() != d_cod.size()) return std::nullopt;
    for (Name n : l2_flat)
      if (d_cod.count(n) == 0) return std::nullopt;
  }

  // k's labels must sit on matching-typed output ports of s, all distinct.
  const LabelContext s_cod = s.cod();
  {
    std::set<Name> ks(k_flat.begin(), k_flat.end());
    if (ks.size() != k_flat.size()) return std::nullopt;
    for (size_t i = 0; i < k_flat.size(); ++i) {
      auto it = s_cod.find(k_flat[i]);
      if (it == s_cod.end()) return std::nullopt;
      if (it->second != d_dom.at(l_flat[i])) return std::nullopt;
    }
  }

  // Rename d's boundary: inputs positionally l_i -> k_i, outputs to fresh.
  // The two sides are renamed independently: a pass-through wire carries the
  // same label on both, and its input must still end up at k_i.
  std::map<Name, Name> dom_rename;
  for (size_t i = 0; i < l_flat.size(); ++i) dom_rename[l_flat[i]] = k_flat[i];
  std::map<Name, Name> cod_rename;
  LabelTuple k2 = fresh_like(l2, fresh, cod_rename);
  LabelledDiagram renamed = d;
  for (Name& n : renamed.dom_labels) n = dom_rename.at(n);
  for (Name& n : renamed.cod_labels) n = cod_rename.at(n);

  // Identity on the untouched outputs of s.
  LabelContext rest = s_cod;
  for (Name n : k_flat) rest.erase(n);

  LabelledDiagram grown = compose(s, tensor(renamed, identity(rest)));
  return std::make_pair(std::move(grown), std::move(k2));
}

// ---------------------------------------------------------------------------
// Isomorphism check

namespace {

bool same_node_shape(const Diagram::Node& a, const Diagram::Node& b) {
  return a.gen == b.gen && a.ins == b.ins && a.outs == b.outs;
}

// Deterministic encoding of the closed component containing start, with node
// discovery order fixed by the traversal. Two isomorphic components produce
// the same encoding from corresponding start nodes.
std::string encode_component(const Diagram& d, const Diagram::Reverse& rev,
                             uint32_t start, std::vector<uint32_t>* members) {
  std::map<uint32_t, int> local;
  std::vector<uint32_t> order;
  std::vector<uint32_t> stack{start};
  while (!stack.empty()) {
    uint32_t n = stack.back();
    stack.pop_back();
    if (local.count(n)) continue;
    local[n] = static_cast<int>(order.size());
    order.push_back(n);
    // Push neighbours in reverse so lower pins are discovered first.
    std::vector<uint32_t> nbrs;
    for (const Endpoint& e : d.from_node[n])
      if (e.kind == Endpoint::Kind::Node) nbrs.push_back(e.index);
    for (const Endpoint& e : rev.node_in_src[n])
      if (e.kind == Endpoint::Kind::Node) nbrs.push_back(e.index);
    for (auto it = nbrs.rbegin(); it != nbrs.rend(); ++it)
      if (!local.count(*it)) stack.push_back(*it);
  }
  std::ostringstream enc;
  for (uint32_t n : order) {
    const auto& node = d.nodes[n];
    enc << node.gen.str() << "(";
    for (Name w : node.ins) enc << w.str() << ",";
    enc << ";";
    for (Name w : node.outs) enc << w.str() << ",";
    enc << ")[";
    for (const Endpoint& e : d.from_node[n])
      enc << local.at(e.index) << ":" << e.pin << ",";
    enc << ";";
    for (const Endpoint& e : rev.node_in_src[n])
      enc << local.at(e.index) << ":" << e.pin << ",";
    enc << "]";
  }
  if (members) *members = order;
  return enc.str();
}

std::multiset<std::string> closed_component_encodings(
    const Diagram& d, const Diagram::Reverse& rev, const std::vector<int>& matched) {
  std::multiset<std::string> out;
  std::vector<bool> done(d.nodes.size(), false);
  for (uint32_t n = 0; n < d.nodes.size(); ++n) {
    if (matched[n] != -1 || done[n]) continue;
    std::vector<uint32_t> members;
    encode_component(d, rev, n, &members);
    std::string best;
    for (uint32_t m : members) {
      std::string e = encode_component(d, rev, m, nullptr);
      if (best.empty() || e < best) best = e;
    }
    for (uint32_t m : members) done[m] = true;
    out.insert(best);
  }
  return out;
}

}  // namespace

bool diagram_eq(const LabelledDiagram& A, const LabelledDiagram& B) {
  const Diagram& a = A.d;
  const Diagram& b = B.d;
  if (a.input_wires != b.input_wires || a.output_wires != b.output_wires)
    return false;
  if (a.nodes.size() != b.nodes.size()) return false;

  const Diagram::Reverse ra = a.reverse();
  const Diagram::Reverse rb = b.reverse();
  std::vector<int> a2b(a.nodes.size(), -1), b2a(b.nodes.size(), -1);
  std::vector<std::pair<uint32_t, uint32_t>> work;

  auto match_nodes = [&](uint32_t na, uint32_t nb) -> bool {
    if (a2b[na] != -1 || b2a[nb] != -1)
      return a2b[na] == static_cast<int>(nb) && b2a[nb] == static_cast<int>(na);
    if (!same_node_shape(a.nodes[na], b.nodes[nb])) return false;
    a2b[na] = static_cast<int>(nb);
    b2a[nb] = static_cast<int>(na);
    work.emplace_back(na, nb);
    return true;
  };
  auto match_ep = [&](const Endpoint& ea, const Endpoint& eb) -> bool {
    if (ea.kind != eb.kind) return false;
    if (ea.kind != Endpoint::Kind::Node) return ea.index == eb.index;
    if (ea.pin != eb.pin) return false;
    return match_nodes(ea.index, eb.index);
  };

  for (size_t i = 0; i < a.from_input.size(); ++i)
    if (!match_ep(a.from_input[i], b.from_input[i])) return false;
  for (size_t j = 0; j < ra.out_src.size(); ++j)
    if (!match_ep(ra.out_src[j], rb.out_src[j])) return false;
  while (!work.empty()) {
    auto [na, nb] = work.back();
    work.pop_back();
    for (size_t p = 0; p < a.from_node[na].size(); ++p)
      if (!match_ep(a.from_node[na][p], b.from_node[nb][p])) return false;
    for (size_t p = 0; p < ra.node_in_src[na].size(); ++p)
      if (!match_ep(ra.node_in_src[na][p], rb.node_in_src[nb][p])) return false;
  }

  // Whatever is not reachable from the boundary forms closed components;
  // compare those as multisets of canonical encodings.
  return closed_component_encodings(a, ra, a2b) ==
         closed_component_encodings(b, rb, b2a);
}

// ---------------------------------------------------------------------------
// Serialization

namespace {

json endpoint_to_json(const Endpoint& e, bool as_source) {
  switch (e.kind) {
    case Endpoint::Kind::In: return json::array({"in", e.index});
    case Endpoint::Kind::Out: return json::array({"out", e.index});
    case Endpoint::Kind::Node: return json::array({"node", e.index, e.pin});
  }
  (void)as_source;
  throw std::logic_error("unreachable");
}

Endpoint endpoint_from_json(const json& j) {
  if (!j.is_array() || j.size() < 2 || !j[0].is_string())
    throw DiagramError("malformed edge endpoint");
  std::string kind = j[0].get<std::string>();
  if (kind == "in") return Endpoint::in(j.at(1).get<uint32_t>());
  if (kind == "out") return Endpoint::out(j.at(1).get<uint32_t>());
  if (kind == "node") {
    if (j.size() != 3) throw DiagramError("node endpoint needs id and pin");
    return Endpoint::node(j.at(1).get<uint32_t>(), j.at(2).get<uint32_t>());
  }
  throw DiagramError("unknown endpoint kind '" + kind + "'");
}

}  // namespace

std::string diagram_to_json(const LabelledDiagram& s) {
  json j;
  j["dom"] = json::array();
  for (size_t i = 0; i < s.dom_labels.size(); ++i)
    j["dom"].push_back(json::array({s.dom_labels[i].str(), s.d.input_wires[i].str()}));
  j["cod"] = json::array();
  for (size_t i = 0; i < s.cod_labels.size(); ++i)
    j["cod"].push_back(json::array({s.cod_labels[i].str(), s.d.output_wires[i].str()}));
  j["nodes"] = json::array();
  for (size_t n = 0; n < s.d.nodes.size(); ++n)
    j["nodes"].push_back(json::array({n, s.d.nodes[n].gen.str()}));
  j["edges"] = json::array();
  for (size_t i = 0; i < s.d.from_input.size(); ++i)
    j["edges"].push_back(json::array(
        {endpoint_to_json(Endpoint::in(static_cast<uint32_t>(i)), true),
         endpoint_to_json(s.d.from_input[i], false)}));
  for (size_t n = 0; n < s.d.from_node.size(); ++n)
    for (size_t p = 0; p < s.d.from_node[n].size(); ++p)
      j["edges"].push_back(json::array(
          {endpoint_to_json(Endpoint::node(static_cast<uint32_t>(n),
                                           static_cast<uint32_t>(p)), true),
           endpoint_to_json(s.d.from_node[n][p], false)}));
  return j.dump(2);
}

LabelledDiagram diagram_from_json(const std::string& text, const Signature& sig) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw DiagramError(std::string("diagram is not valid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("dom") || !j.contains("cod") ||
      !j.contains("nodes") || !j.contains("edges"))
    throw DiagramError("diagram needs 'dom', 'cod', 'nodes' and 'edges'");

  LabelledDiagram s;
  for (auto& p : j.at("dom")) {
    s.dom_labels.emplace_back(p.at(0).get<std::string>());
    Name w(p.at(1).get<std::string>());
    if (!sig.has_wire(w)) throw DiagramError("undeclared wire '" + w.str() + "'");
    s.d.input_wires.push_back(w);
  }
  for (auto& p : j.at("cod")) {
    s.cod_labels.emplace_back(p.at(0).get<std::string>());
    Name w(p.at(1).get<std::string>());
    if (!sig.has_wire(w)) throw DiagramError("undeclared wire '" + w.str() + "'");
    s.d.output_wires.push_back(w);
  }

  // Node ids may be sparse in the file; remap them to dense indices.
  std::map<uint32_t, uint32_t> dense;
  for (auto& n : j.at("nodes")) {
    uint32_t id = n.at(0).get<uint32_t>();
    Name gen(n.at(1).get<std::string>());
    const Generator* g = sig.find(gen);
    if (!g) throw DiagramError("unknown generator '" + gen.str() + "'");
    if (!dense.emplace(id, static_cast<uint32_t>(s.d.nodes.size())).second)
      throw DiagramError("duplicate node id");
    s.d.nodes.push_back(Diagram::Node{g->name, g->ins, g->outs});
  }
  auto remap = [&](Endpoint e) {
    if (e.kind == Endpoint::Kind::Node) {
      auto it = dense.find(e.index);
      if (it == dense.end()) throw DiagramError("edge references unknown node");
      e.index = it->second;
    }
    return e;
  };

  s.d.from_input.assign(s.d.input_wires.size(), Endpoint{});
  std::vector<bool> in_set(s.d.input_wires.size(), false);
  s.d.from_node.resize(s.d.nodes.size());
  std::vector<std::vector<bool>> pin_set(s.d.nodes.size());
  for (size_t n = 0; n < s.d.nodes.size(); ++n) {
    s.d.from_node[n].assign(s.d.nodes[n].outs.size(), Endpoint{});
    pin_set[n].assign(s.d.nodes[n].outs.size(), false);
  }
  for (auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 2) throw DiagramError("malformed edge");
    Endpoint src = remap(endpoint_from_json(e.at(0)));
    Endpoint dst = remap(endpoint_from_json(e.at(1)));
    if (src.kind == Endpoint::Kind::In) {
      if (src.index >= in_set.size() || in_set[src.index])
        throw DiagramError("input port wired twice or out of range");
      in_set[src.index] = true;
      s.d.from_input[src.index] = dst;
    } else if (src.kind == Endpoint::Kind::Node) {
      if (src.index >= pin_set.size() || src.pin >= pin_set[src.index].size() ||
          pin_set[src.index][src.pin])
        throw DiagramError("node output pin wired twice or out of range");
      pin_set[src.index][src.pin] = true;
      s.d.from_node[src.index][src.pin] = dst;
    } else {
      throw DiagramError("edge source cannot be an output port");
    }
  }
  for (bool b : in_set)
    if (!b) throw DiagramError("unwired input port");
  for (auto& pins : pin_set)
    for (bool b : pins)
      if (!b) throw DiagramError("unwired node output pin");

  s.validate();
  return s;
}

std::string diagram_to_dot(const LabelledDiagram& s) {
  std::ostringstream o;
  o << "digraph diagram {\n  rankdir=LR;\n";
  for (size_t i = 0; i < s.dom_labels.size(); ++i)
    o << "  in" << i << " [shape=plaintext, label=\"" << s.dom_labels[i].str()
      << ":" << s.d.input_wires[i].str() << "\"];\n";
  for (size_t n = 0; n < s.d.nodes.size(); ++n)
    o << "  n" << n << " [shape=box, label=\"" << s.d.nodes[n].gen.str() << "\"];\n";
  for (size_t i = 0; i < s.cod_labels.size(); ++i)
    o << "  out" << i << " [shape=plaintext, label=\"" << s.cod_labels[i].str()
      << ":" << s.d.output_wires[i].str() << "\"];\n";
  auto src_name = [](Endpoint e) {
    return (e.kind == Endpoint::Kind::In ? "in" : "n") + std::to_string(e.index);
  };
  auto dst_name = [](Endpoint e) {
    return (e.kind == Endpoint::Kind::Out ? "out" : "n") + std::to_string(e.index);
  };
  auto emit_edge = [&](Endpoint src, Endpoint dst, Name wire) {
    o << "  " << src_name(src) << " -> " << dst_name(dst) << " [label=\""
      << wire.str() << "\"];\n";
  };
  for (size_t i = 0; i < s.d.from_input.size(); ++i)
    emit_edge(Endpoint::in(static_cast<uint32_t>(i)), s.d.from_input[i],
              s.d.input_wires[i]);
  for (size_t n = 0; n < s.d.from_node.size(); ++n)
    for (size_t p = 0; p < s.d.from_node[n].size(); ++p)
      emit_edge(Endpoint::node(static_cast<uint32_t>(n), static_cast<uint32_t>(p)),
                s.d.from_node[n][p], s.d.nodes[n].outs[p]);
  o << "}\n";
  return o.str();
}

}  // namespace eclnl
