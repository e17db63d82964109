#pragma once

#include <cstdint>
#include <string>

#include "eclnl/diagram.hpp"
#include "eclnl/signature.hpp"
#include "eclnl/term.hpp"

namespace eclnl {

// Result of running a machine configuration (s, m) to completion. Error
// means the machine got stuck (the operational Error outcome); rule names
// the operation that failed.
struct Outcome {
  enum class Kind { Value, Error, FuelExhausted };
  Kind kind = Kind::Error;
  Term value = Term::star();  // Kind::Value only
  std::string rule;           // Kind::Error only
  std::string detail;         // Kind::Error only

  static Outcome ok(Term v) {
    return {Kind::Value, std::move(v), "", ""};
  }
  static Outcome stuck(std::string rule, std::string detail) {
    return {Kind::Error, Term::star(), std::move(rule), std::move(detail)};
  }
  static Outcome out_of_fuel() { return {Kind::FuelExhausted, Term::star(), "", ""}; }
};

struct EvalResult {
  Outcome outcome;
  LabelledDiagram diagram;  // final machine diagram; best effort on failure
  uint64_t steps = 0;       // dispatches taken
};

// Big-step evaluation of (start, m) with a step budget. Uses an explicit
// frame stack, so deep recursion costs heap, not C++ stack. fresh supplies
// machine-generated labels and must outlive labels already in start.
EvalResult evaluate(const LabelledDiagram& start, const Term& m,
                    const Signature& sig, uint64_t fuel, FreshSource& fresh);

// Convenience: run m against the empty diagram with a fresh label source.
EvalResult evaluate_closed(const Term& m, const Signature& sig, uint64_t fuel);

}  // namespace eclnl
