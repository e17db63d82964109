#pragma once

#include <optional>
#include <string>
#include <vector>

#include "eclnl/eval.hpp"
#include "eclnl/parser.hpp"
#include "eclnl/signature.hpp"
#include "eclnl/types.hpp"

namespace eclnl {

// A full run of a program: definitions folded into the main term, the type
// of the whole, and the machine result starting from the empty diagram.
struct RunReport {
  Type type = Type::unit();
  EvalResult result;
  // Boxed-diagram values reachable through pairs and injections of the final
  // value, left to right.
  std::vector<Term> boxed_values;
};

RunReport run_program(const SourceProgram& p, const Signature& sig,
                      uint64_t fuel);

// Deterministic renderings of a report. The JSON form is byte-stable for a
// given program, signature and fuel.
std::string run_report_text(const RunReport& r);
std::string run_report_json(const RunReport& r);

// Signature used by a program: an explicit path wins over the program's
// signature line (resolved relative to base_dir), and the built-in demo
// signature is the fallback. Throws SignatureError when a file is missing
// or malformed.
Signature resolve_signature(const std::optional<std::string>& explicit_path,
                            const std::optional<std::string>& in_file_path,
                            const std::string& base_dir);

// {"kind": "Syntax"|"UnknownWireType", "span": {...}, "detail": ...}
std::string parse_error_to_json(const ParseError& e);

}  // namespace eclnl
