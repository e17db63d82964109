#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "eclnl/signature.hpp"
#include "eclnl/span.hpp"
#include "eclnl/term.hpp"
#include "eclnl/types.hpp"

namespace eclnl {

struct ParseError : std::runtime_error {
  enum class Kind { Syntax, UnknownWireType };
  ParseError(Kind k, Span s, const std::string& message)
      : std::runtime_error(message), kind(k), span(s) {}
  Kind kind;
  Span span;
};

// A parsed source file: optional signature reference, sugar-level
// definitions in order, and the main term.
struct SourceProgram {
  std::optional<std::string> signature_path;
  std::vector<std::pair<Name, Term>> definitions;
  Term main = Term::star();
};

// Grammar of a file: an optional signature line, then either one bare term
// or a run of definitions ending in the program body,
//   [signature "path.json"] ( term | { def NAME = term } def main = term )
// with -- line comments. Throws ParseError with a span inside the input.
// Wire names in types are not validated by this overload.
SourceProgram parse_program(const std::string& text);

// As above, then checks every wire name in type position against sig
// (ParseError kind UnknownWireType) and resolves free identifiers naming
// generators into constants.
SourceProgram parse_program(const std::string& text, const Signature& sig);

// Single-term conveniences built on parse_program.
Term parse_term(const std::string& text);
Term parse_term(const std::string& text, const Signature& sig);
Type parse_type(const std::string& text);

// Rewrites free variables that name a generator of sig into constants.
Term resolve_constants(const Term& t, const Signature& sig);

// Nested-let desugaring of the definitions around main.
Term desugar(const SourceProgram& p);

// Inverse of the term grammar up to alpha-equivalence for parseable terms;
// labels print as #name and boxed diagrams as opaque #diag{...}.
std::string print_term(const Term& t);

}  // namespace eclnl
