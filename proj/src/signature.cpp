#include "eclnl/signature.hpp"

#include <cctype>

#include "json.hpp"

namespace eclnl {
namespace {

using nlohmann::json;

bool identifier_shaped(const std::string& s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '\'')
      return false;
  return true;
}

bool reserved_word(const std::string& s) {
  static const std::set<std::string> kReserved = {
      "let", "in", "case", "of", "left", "right", "box", "apply",
      "lift", "force", "rec", "initial", "def", "signature", "I", "Diag"};
  return kReserved.count(s) != 0;
}

void check_name(const std::string& s, const char* what) {
  if (!identifier_shaped(s) || reserved_word(s))
    throw SignatureError(std::string(what) + " name '" + s +
                         "' is not a usable identifier");
}

}  // namespace

Signature::Signature(std::vector<Name> wires, std::vector<Generator> gens) {
  for (Name w : wires) {
    check_name(w.str(), "wire");
    if (!wires_.insert(w).second)
      throw SignatureError("duplicate wire type '" + w.str() + "'");
  }
  std::set<Name> seen;
  for (auto& g : gens) {
    check_name(g.name.str(), "generator");
    if (!seen.insert(g.name).second)
      throw SignatureError("duplicate generator '" + g.name.str() + "'");
    for (Name w : g.ins)
      if (!has_wire(w))
        throw SignatureError("generator '" + g.name.str() +
                             "' uses undeclared wire '" + w.str() + "'");
    for (Name w : g.outs)
      if (!has_wire(w))
        throw SignatureError("generator '" + g.name.str() +
                             "' uses undeclared wire '" + w.str() + "'");
  }
  gens_ = std::move(gens);
}

Signature Signature::from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw SignatureError(std::string("signature is not valid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("wires") || !j.contains("generators"))
    throw SignatureError("signature must be an object with 'wires' and 'generators'");
  std::vector<Name> wires;
  for (auto& w : j.at("wires")) {
    if (!w.is_string()) throw SignatureError("wire entries must be strings");
    wires.emplace_back(w.get<std::string>());
  }
  std::vector<Generator> gens;
  for (auto& g : j.at("generators")) {
    if (!g.is_object() || !g.contains("name") || !g.contains("ins") || !g.contains("outs"))
      throw SignatureError("each generator needs 'name', 'ins' and 'outs'");
    Generator gen;
    gen.name = Name(g.at("name").get<std::string>());
    for (auto& w : g.at("ins")) gen.ins.emplace_back(w.get<std::string>());
    for (auto& w : g.at("outs")) gen.outs.emplace_back(w.get<std::string>());
    gens.push_back(std::move(gen));
  }
  return Signature(std::move(wires), std::move(gens));
}

std::string Signature::to_json_text() const {
  json j;
  j["wires"] = json::array();
  for (Name w : wires_) j["wires"].push_back(w.str());
  j["generators"] = json::array();
  for (const auto& g : gens_) {
    json jg;
    jg["name"] = g.name.str();
    jg["ins"] = json::array();
    for (Name w : g.ins) jg["ins"].push_back(w.str());
    jg["outs"] = json::array();
    for (Name w : g.outs) jg["outs"].push_back(w.str());
    j["generators"].push_back(jg);
  }
  return j.dump(2);
}

const Signature& Signature::demo() {
  static const Signature sig = [] {
    Name q("qubit");
    std::vector<Generator> gens;
    gens.push_back(Generator{Name("h"), {q}, {q}});
    gens.push_back(Generator{Name("cnot"), {q, q}, {q, q}});
    gens.push_back(Generator{Name("new"), {}, {q}});
    return Signature({q}, std::move(gens));
  }();
  return sig;
}

const Generator* Signature::find(Name g) const {
  for (const auto& gen : gens_)
    if (gen.name == g) return &gen;
  return nullptr;
}

Type Signature::constant_type(Name g) const {
  const Generator* gen = find(g);
  if (!gen) throw SignatureError("unknown generator '" + g.str() + "'");
  return Type::lolli(fold_tensor(gen->ins), fold_tensor(gen->outs));
}

Type Signature::fold_tensor(const std::vector<Name>& wires) {
  return fold_mtensor(wires).to_type();
}

MType Signature::fold_mtensor(const std::vector<Name>& wires) {
  if (wires.empty()) return MType::unit();
  MType acc = MType::wire(wires.back());
  for (size_t i = wires.size() - 1; i-- > 0;)
    acc = MType::tensor(MType::wire(wires[i]), acc);
  return acc;
}

}  // namespace eclnl
