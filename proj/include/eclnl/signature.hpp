#pragma once

#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "eclnl/names.hpp"
#include "eclnl/types.hpp"

namespace eclnl {

// A generator of the free monoidal signature: named, with ordered input and
// output wire types.
struct Generator {
  Name name;
  std::vector<Name> ins;
  std::vector<Name> outs;
};

struct SignatureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Wire types plus generators. Generators double as the constants of the
// term language: g gets type tensor(ins) -o tensor(outs), where tensor([])
// is I and longer lists fold right-nested.
class Signature {
 public:
  Signature() = default;
  Signature(std::vector<Name> wires, std::vector<Generator> gens);

  // Parses {"wires": [...], "generators": [{"name", "ins", "outs"}...]}.
  // Throws SignatureError on malformed input.
  static Signature from_json_text(const std::string& text);
  std::string to_json_text() const;

  // Built-in demo signature: wire qubit; h: qubit -> qubit,
  // cnot: qubit,qubit -> qubit,qubit, new: [] -> qubit.
  static const Signature& demo();

  bool has_wire(Name w) const { return wires_.count(w) != 0; }
  const std::set<Name>& wires() const { return wires_; }

  const Generator* find(Name g) const;
  const std::vector<Generator>& generators() const { return gens_; }

  // The constant's type, or throws SignatureError if g is unknown.
  Type constant_type(Name g) const;

  // Right-nested tensor of wire types; I when empty.
  static Type fold_tensor(const std::vector<Name>& wires);
  static MType fold_mtensor(const std::vector<Name>& wires);

 private:
  std::set<Name> wires_;
  std::vector<Generator> gens_;
};

}  // namespace eclnl
